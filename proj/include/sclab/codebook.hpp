#pragma once

#include <cstdint>
#include <span>

#include "sclab/prob.hpp"

namespace sclab {

struct MessagePair {
  std::size_t m = 0;
  std::size_t mprime = 0;
  bool operator==(const MessagePair&) const = default;
};

inline constexpr std::size_t kDefaultSymbolBudget = std::size_t{1} << 26;

/// Indexed family of n-length codewords {v^n(m, m')} drawn i.i.d. from a
/// generator pmf. Letters come from a counter-based stream keyed by
/// (seed, m, m', t), so any single letter is recomputable without the table
/// and regeneration with equal arguments reproduces the table bit-exactly.
class Codebook {
 public:
  static Codebook generate(const Pmf& generator, std::size_t n, double rate_r,
                           double rate_rprime, std::uint64_t seed,
                           std::size_t symbol_budget = kDefaultSymbolBudget);

  // Explicit table (ensemble enumeration, fixtures). Not seed-regenerable;
  // such codebooks report seed 0 and regenerable() == false.
  static Codebook from_table(const Pmf& generator, std::size_t n,
                             std::size_t num_m, std::size_t num_mprime,
                             std::vector<Symbol> letters);

  // The keyed draw behind generate(): equivalent to sampling generator by
  // inverse CDF at u01(derive_seed(seed, "codeword-letter", m, m', t)).
  static Symbol derive_letter(const Pmf& generator, std::uint64_t seed,
                              std::size_t m, std::size_t mprime,
                              std::size_t t);

  // ceil(2^{n * rate}), snapping n * rate to an integer when within 1e-9 so
  // ulp-level exp2 drift cannot change the codebook size.
  static std::size_t index_count(std::size_t n, double rate);

  std::size_t n() const { return n_; }
  std::size_t num_m() const { return num_m_; }
  std::size_t num_mprime() const { return num_mprime_; }
  std::size_t num_codewords() const { return num_m_ * num_mprime_; }
  const Pmf& generator() const { return generator_; }
  std::uint64_t seed() const { return seed_; }
  bool regenerable() const { return regenerable_; }

  std::size_t message_index(MessagePair msg) const;
  Symbol letter(std::size_t m, std::size_t mprime, std::size_t t) const;
  std::span<const Symbol> codeword_view(MessagePair msg) const;
  SymbolSequence codeword(MessagePair msg) const;

 private:
  Codebook(Pmf generator, std::size_t n, std::size_t num_m,
           std::size_t num_mprime, std::uint64_t seed, bool regenerable,
           std::vector<Symbol> letters);

  Pmf generator_;
  std::size_t n_;
  std::size_t num_m_;
  std::size_t num_mprime_;
  std::uint64_t seed_;
  bool regenerable_;
  std::vector<Symbol> letters_;  // flattened (m * num_mprime + m') * n + t
};

}  // namespace sclab
