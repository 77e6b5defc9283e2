#pragma once

#include <cstdint>
#include <vector>

#include "sclab/prob.hpp"
#include "sclab/reconstruction.hpp"

namespace sclab {

enum class SolverStatus { kConverged, kZeroRate, kIterationLimit, kExact };

const char* to_string(SolverStatus status);

/// A solved operating point: one rate/distortion for single-source problems,
/// pairs for the two-encoder region. The achieving channel(s) and map(s)
/// re-evaluate to the reported numbers through the exact probability ops.
struct RateDistortionPoint {
  std::vector<double> rates;
  std::vector<double> distortions;
  std::vector<Channel> achieving_channels;
  std::vector<ReconstructionMap> achieving_maps;
  SolverStatus status = SolverStatus::kExact;
  std::size_t iterations = 0;
};

// R(D) for a single source by alternating minimization over reproduction
// distributions at a fixed Lagrange slope, with an outer bisection on the
// slope to land within 1e-6 of target_d. Targets at or above the zero-rate
// distortion return rate 0 with the best constant reconstruction.
RateDistortionPoint blahut_arimoto_rd(const Pmf& source,
                                      const DistortionMeasure& d,
                                      double target_d);

struct WynerZivOptions {
  std::size_t restarts = 64;        // inits per slope: canonical + grid + random
  std::size_t max_alternations = 400;
  double alternation_tol = 1e-11;   // Lagrangian decrease cutoff, nats
  std::size_t bisection_iters = 44;
  std::uint64_t seed = 0x5c1ab0;
  bool grid_pass = true;            // deterministic coarse grid (binary sources)
};

// Minimum conditional rate for coding with decoder side information: searches
// channels P(v|x) with |V| = |X| + 1 paired with the greedy per-cell
// reconstruction, subject to expected distortion <= target_d. Nonconvex; the
// result is a certified-feasible upper bound found by multi-start alternating
// descent plus a deterministic grid pass.
RateDistortionPoint wyner_ziv_rate(const JointPmf& joint_xb,
                                   const DistortionMeasure& d, double target_d,
                                   const WynerZivOptions& options = {});

enum class Corner { kFirstDecodedFirst, kSecondDecodedFirst };

// Exact rate pair and distortion pair at a corner of the two-encoder region
// for the factorization P(x1,x2) * ch1(u1|x1) * ch2(u2|x2). The default
// corner decodes encoder 1 first: rates (I(X1;U1), I(X2;U2|U1)).
RateDistortionPoint berger_tung_corner(const JointPmf& joint_x1x2,
                                       const Channel& ch1, const Channel& ch2,
                                       const ReconstructionMap& phi1,
                                       const ReconstructionMap& phi2,
                                       const DistortionMeasure& d1,
                                       const DistortionMeasure& d2,
                                       Corner corner = Corner::kFirstDecodedFirst);

// Componentwise convex combination lambda * p1 + (1 - lambda) * p2 of rates
// and distortions (blocklength-splitting between two operating points).
RateDistortionPoint time_share(const RateDistortionPoint& p1,
                               const RateDistortionPoint& p2, double lambda);

// --- exact joint builders shared with the simulation pipelines ---

// (X, V, B) joint P(x,b) * ch(v|x); the conditional-independence structure
// V - X - B is built in.
JointPmf wz_joint_xvb(const JointPmf& joint_xb, const Channel& test_channel);

// (U1, U2) joint under P(x1,x2) * ch1(u1|x1) * ch2(u2|x2).
JointPmf bt_joint_u1u2(const JointPmf& joint_x1x2, const Channel& ch1,
                       const Channel& ch2);

// (X_k, U1, U2) joint under the same factorization; source_index is 0 or 1.
JointPmf bt_joint_xk_u1u2(const JointPmf& joint_x1x2, const Channel& ch1,
                          const Channel& ch2, std::size_t source_index);

}  // namespace sclab
