#include "sclab/coding.hpp"

#include <cmath>
#include <limits>

namespace sclab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log2 of every channel entry, indexed v * num_outputs + x.
std::vector<double> log2_table(const Channel& ch) {
  std::vector<double> t(ch.num_inputs() * ch.num_outputs());
  for (std::size_t v = 0; v < ch.num_inputs(); ++v)
    for (std::size_t x = 0; x < ch.num_outputs(); ++x) {
      double p = ch(x, v);
      t[v * ch.num_outputs() + x] = p > 0.0 ? std::log2(p) : kNegInf;
    }
  return t;
}

void check_observation(const Codebook& cb, const Channel& ch,
                       const SymbolSequence& x) {
  if (x.size() != cb.n()) {
    throw std::invalid_argument("likelihood: sequence length != blocklength");
  }
  if (ch.num_inputs() != cb.generator().size()) {
    throw std::invalid_argument("likelihood: channel input != codeword alphabet");
  }
  for (Symbol s : x) {
    if (s >= ch.num_outputs()) {
      throw std::invalid_argument("likelihood: observed symbol out of range");
    }
  }
}

}  // namespace

double log_likelihood(const Codebook& cb, const Channel& ch,
                      const SymbolSequence& x, MessagePair msg) {
  check_observation(cb, ch, x);
  auto cw = cb.codeword_view(msg);
  double acc = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    double p = ch(x[t], cw[t]);
    if (p <= 0.0) return kNegInf;
    acc += std::log2(p);
  }
  return acc;
}

std::vector<double> log_likelihood_table(const Codebook& cb, const Channel& ch,
                                         const SymbolSequence& x) {
  check_observation(cb, ch, x);
  const auto logs = log2_table(ch);
  const std::size_t n = cb.n(), k = ch.num_outputs();
  std::vector<double> table(cb.num_codewords());
  for (std::size_t w = 0; w < table.size(); ++w) {
    auto cw = cb.codeword_view(
        {w / cb.num_mprime(), w % cb.num_mprime()});
    double acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) acc += logs[cw[t] * k + x[t]];
    table[w] = acc;
  }
  return table;
}

Pmf encoder_posterior(const Codebook& cb, const Channel& ch,
                      const SymbolSequence& x) {
  std::vector<double> table = log_likelihood_table(cb, ch, x);
  double peak = kNegInf;
  for (double l : table) peak = std::max(peak, l);
  if (peak == kNegInf) throw AllZeroLikelihood();
  double total = 0.0;
  for (double& l : table) {
    l = l == kNegInf ? 0.0 : std::exp2(l - peak);
    total += l;
  }
  for (double& l : table) l /= total;
  return Pmf::trusted(std::move(table));
}

MessagePair likelihood_encode(const Codebook& cb, const Channel& ch,
                              const SymbolSequence& x, Rng& rng) {
  Pmf posterior = encoder_posterior(cb, ch, x);
  std::size_t w = inverse_cdf(posterior.probs(), rng.next_u01());
  return {w / cb.num_mprime(), w % cb.num_mprime()};
}

MessagePair likelihood_encode(const Codebook& cb, const Channel& ch,
                              const SymbolSequence& x, std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  return likelihood_encode(cb, ch, x, rng);
}

std::size_t ml_channel_decode(const Codebook& cb, std::size_t m,
                              const Channel& ch, const SymbolSequence& b,
                              bool* degenerate) {
  check_observation(cb, ch, b);
  if (m >= cb.num_m()) {
    throw std::invalid_argument("ml_channel_decode: message out of range");
  }
  const auto logs = log2_table(ch);
  const std::size_t k = ch.num_outputs();
  double best = kNegInf;
  std::size_t best_mp = 0;
  for (std::size_t mp = 0; mp < cb.num_mprime(); ++mp) {
    auto cw = cb.codeword_view({m, mp});
    double acc = 0.0;
    for (std::size_t t = 0; t < b.size(); ++t) acc += logs[cw[t] * k + b[t]];
    if (acc > best) {
      best = acc;
      best_mp = mp;
    }
  }
  if (degenerate) *degenerate = (best == kNegInf);
  return best_mp;
}

SymbolSequence reconstruct(const ReconstructionMap& phi,
                           const SymbolSequence& v, const SymbolSequence& b) {
  if (v.size() != b.size() || v.empty()) {
    throw std::invalid_argument("reconstruct: length mismatch");
  }
  SymbolSequence y(v.size());
  for (std::size_t t = 0; t < v.size(); ++t) {
    if (v[t] >= phi.num_v() || b[t] >= phi.num_b()) {
      throw std::invalid_argument("reconstruct: symbol out of range");
    }
    y[t] = phi(v[t], b[t]);
  }
  return y;
}

}  // namespace sclab
