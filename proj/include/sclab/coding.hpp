#pragma once

#include <stdexcept>

#include "sclab/codebook.hpp"
#include "sclab/reconstruction.hpp"
#include "sclab/rng.hpp"

namespace sclab {

/// Every codeword assigns zero likelihood to the observed sequence, i.e. the
/// channel and codebook are inconsistent with the data. Library callers get
/// this throw; simulation paths catch it, substitute a uniform message and
/// record a degeneracy flag.
class AllZeroLikelihood : public std::runtime_error {
 public:
  AllZeroLikelihood()
      : std::runtime_error("all codewords have zero likelihood") {}
};

// log2 P(x^n | v^n(msg)) through the memoryless channel ch(x | v);
// -infinity when any letter has zero probability.
double log_likelihood(const Codebook& cb, const Channel& ch,
                      const SymbolSequence& x, MessagePair msg);

// Log-likelihoods of every codeword, flattened as m * num_mprime + m'.
std::vector<double> log_likelihood_table(const Codebook& cb, const Channel& ch,
                                         const SymbolSequence& x);

// Posterior over message pairs, proportional to the per-codeword likelihoods
// (same flattening as log_likelihood_table). Max-shifted before
// exponentiation so the normalization is finite-precision-safe.
Pmf encoder_posterior(const Codebook& cb, const Channel& ch,
                      const SymbolSequence& x);

// One inverse-CDF sample from encoder_posterior using the caller's stream.
MessagePair likelihood_encode(const Codebook& cb, const Channel& ch,
                              const SymbolSequence& x, Rng& rng);
MessagePair likelihood_encode(const Codebook& cb, const Channel& ch,
                              const SymbolSequence& x, std::uint64_t rng_seed);

// argmax over m' of log2 P(b^n | v^n(m, m')) within the sub-codebook of m;
// ties break to the lowest index. When every candidate sits at -infinity the
// result is index 0 with *degenerate set.
std::size_t ml_channel_decode(const Codebook& cb, std::size_t m,
                              const Channel& ch, const SymbolSequence& b,
                              bool* degenerate = nullptr);

// Symbolwise application of phi: {phi(v_t, b_t)}_t.
SymbolSequence reconstruct(const ReconstructionMap& phi,
                           const SymbolSequence& v, const SymbolSequence& b);

}  // namespace sclab
