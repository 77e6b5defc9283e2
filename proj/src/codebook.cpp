#include "sclab/codebook.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sclab/rng.hpp"

namespace sclab {

Codebook::Codebook(Pmf generator, std::size_t n, std::size_t num_m,
                   std::size_t num_mprime, std::uint64_t seed,
                   bool regenerable, std::vector<Symbol> letters)
    : generator_(std::move(generator)), n_(n), num_m_(num_m),
      num_mprime_(num_mprime), seed_(seed), regenerable_(regenerable),
      letters_(std::move(letters)) {}

std::size_t Codebook::index_count(std::size_t n, double rate) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    throw std::invalid_argument("Codebook: rate must be finite and >= 0");
  }
  double exponent = static_cast<double>(n) * rate;
  if (exponent > 62.0) {
    throw std::invalid_argument("Codebook: 2^(n*rate) overflows the index type");
  }
  double rounded = std::round(exponent);
  double count = (std::abs(exponent - rounded) < 1e-9) ? std::exp2(rounded)
                                                       : std::ceil(std::exp2(exponent));
  return static_cast<std::size_t>(count);
}

Codebook Codebook::generate(const Pmf& generator, std::size_t n, double rate_r,
                            double rate_rprime, std::uint64_t seed,
                            std::size_t symbol_budget) {
  if (n == 0) throw std::invalid_argument("Codebook: blocklength must be >= 1");
  const std::size_t num_m = index_count(n, rate_r);
  const std::size_t num_mprime = index_count(n, rate_rprime);
  if (num_m > symbol_budget / num_mprime ||
      num_m * num_mprime > symbol_budget / n) {
    throw std::invalid_argument(
        "Codebook: requires " + std::to_string(num_m) + " * " +
        std::to_string(num_mprime) + " * " + std::to_string(n) +
        " symbols, over the budget of " + std::to_string(symbol_budget));
  }
  std::vector<Symbol> letters(num_m * num_mprime * n);
  std::size_t pos = 0;
  for (std::size_t m = 0; m < num_m; ++m)
    for (std::size_t mp = 0; mp < num_mprime; ++mp)
      for (std::size_t t = 0; t < n; ++t)
        letters[pos++] = derive_letter(generator, seed, m, mp, t);
  return Codebook(generator, n, num_m, num_mprime, seed, true,
                  std::move(letters));
}

Codebook Codebook::from_table(const Pmf& generator, std::size_t n,
                              std::size_t num_m, std::size_t num_mprime,
                              std::vector<Symbol> letters) {
  if (n == 0 || num_m == 0 || num_mprime == 0) {
    throw std::invalid_argument("Codebook: zero-size table");
  }
  if (letters.size() != num_m * num_mprime * n) {
    throw std::invalid_argument("Codebook: table size mismatch");
  }
  for (Symbol s : letters) {
    if (s >= generator.size()) {
      throw std::invalid_argument("Codebook: letter outside generator alphabet");
    }
  }
  return Codebook(generator, n, num_m, num_mprime, 0, false,
                  std::move(letters));
}

Symbol Codebook::derive_letter(const Pmf& generator, std::uint64_t seed,
                               std::size_t m, std::size_t mprime,
                               std::size_t t) {
  static const std::uint64_t tag = hash_tag("codeword-letter");
  std::uint64_t h = mix64(seed ^ tag);
  h = mix64(h ^ m);
  h = mix64(h ^ mprime);
  h = mix64(h ^ t);
  double u = static_cast<double>(h >> 11) * 0x1.0p-53;
  return static_cast<Symbol>(inverse_cdf(generator.probs(), u));
}

std::size_t Codebook::message_index(MessagePair msg) const {
  if (msg.m >= num_m_ || msg.mprime >= num_mprime_) {
    throw std::invalid_argument("Codebook: message index out of range");
  }
  return msg.m * num_mprime_ + msg.mprime;
}

Symbol Codebook::letter(std::size_t m, std::size_t mprime,
                        std::size_t t) const {
  if (t >= n_) throw std::invalid_argument("Codebook: letter position out of range");
  return letters_[message_index({m, mprime}) * n_ + t];
}

std::span<const Symbol> Codebook::codeword_view(MessagePair msg) const {
  return {letters_.data() + message_index(msg) * n_, n_};
}

SymbolSequence Codebook::codeword(MessagePair msg) const {
  auto view = codeword_view(msg);
  return SymbolSequence(view.begin(), view.end());
}

}  // namespace sclab
