#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sclab/codebook.hpp"
#include "sclab/prob.hpp"

namespace sclab {

// Largest codebook an exact induced-distribution enumeration will accept.
inline constexpr std::size_t kMaxEnumerableCodewords = std::size_t{1} << 16;

// Largest all-codebooks ensemble the averaging identity will enumerate.
inline constexpr std::size_t kMaxEnsembleSize = std::size_t{1} << 16;

// Exact output distribution of a uniformly-selected codeword pushed through
// a memoryless channel: P(x^n) = (1/|cb|) sum_msg prod_t ch(x_t | v_t(msg)).
Pmf induced_sequence_dist(const Codebook& cb, const Channel& ch);

// Total variation between the induced distribution and the length-n iid
// product of `target`.
double tv_to_iid(const Codebook& cb, const Channel& ch, const Pmf& target);

struct SoftcoverCell {
  double rate = 0.0;
  std::size_t n = 0;
  std::size_t num_codewords = 0;
  std::vector<double> tvs;  // one exact value per codebook
  double mean_tv = 0.0;
};

struct SoftcoverReport {
  double mutual_information_bits = 0.0;
  std::size_t codebooks_per_cell = 0;
  std::uint64_t seed = 0;
  std::vector<SoftcoverCell> cells;  // rate-major, blocklength-minor order
};

// Exact covering sweep over a (rate, n) grid. `joint` is 2-axis with axis 1
// the codeword symbol: codebooks are drawn from the axis-1 marginal, pushed
// through the conditional channel P(axis0 | axis1), and compared against the
// axis-0 marginal product. Everything here is exact enumeration; sampled TV
// estimates would bias the comparison, so blocklengths are capped instead.
SoftcoverReport softcover_sweep(const JointPmf& joint,
                                const std::vector<double>& rates,
                                const std::vector<std::size_t>& ns,
                                std::size_t codebooks_per_cell,
                                std::uint64_t seed, unsigned threads = 1);

// Folds side information into the covering target: 2-axis joint over the
// merged output pair (pair index x * |B| + b) and the auxiliary symbol, for
// running the sweep in its pair-output form.
JointPmf pair_output_joint(const JointPmf& joint_xb,
                           const Channel& test_channel);

/// A single-letter model plus codebook shape, small enough to enumerate
/// sequences, messages and (optionally) the whole codebook ensemble.
struct QIdentityFixture {
  std::string name;
  Pmf pmf_v;          // codeword letter distribution
  Channel x_given_v;  // P(x | v)
  Channel b_given_x;  // P(b | x)
  std::size_t n = 1;
  std::size_t num_m = 1;
  std::size_t num_mprime = 1;
  std::uint64_t seed = 0;
  bool ensemble_check = true;
};

struct QIdentityReport {
  std::string name;
  // (a) max | exact Bayes posterior of the auxiliary joint - encoder
  //     posterior | over all messages and all positive-probability x^n.
  double posterior_max_error = 0.0;
  // (b) max | ensemble-averaged sequence joint - iid product | over all
  //     (x^n, b^n, v^n) cells; 0 when the check is skipped.
  double ensemble_max_error = 0.0;
  bool ensemble_checked = false;
  std::size_t sequences_checked = 0;
  std::size_t ensembles_checked = 0;
};

QIdentityReport verify_q_identities(const QIdentityFixture& fixture);

// The fixtures exercised by the identity test suite and the CLI.
std::vector<QIdentityFixture> builtin_q_fixtures();

}  // namespace sclab
