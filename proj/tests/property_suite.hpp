#pragma once

// Randomized distance/information property checks shared by the unit tests
// and the acceptance suite (which runs them at full instance counts).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "sclab/prob.hpp"
#include "sclab/rng.hpp"

namespace sclab::testing {

inline Pmf random_pmf(Rng& rng, std::size_t size) {
  std::vector<double> p(size);
  double total = 0.0;
  for (double& v : p) {
    v = -std::log(std::max(rng.next_u01(), 1e-300));
    total += v;
  }
  for (double& v : p) v /= total;
  return Pmf(std::move(p));
}

inline Channel random_channel(Rng& rng, std::size_t in, std::size_t out) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < in; ++i)
    rows.push_back(random_pmf(rng, out).probs());
  return Channel(rows);
}

inline JointPmf random_joint(Rng& rng, std::vector<std::size_t> dims) {
  std::size_t total = 1;
  for (std::size_t d : dims) total *= d;
  return JointPmf(std::move(dims), random_pmf(rng, total).probs());
}

inline std::size_t random_size(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + rng.next_index(hi - lo + 1);
}

struct PropertyOutcome {
  std::size_t violations = 0;
  double max_gap = 0.0;  // worst lhs - rhs (or |difference| for equalities)
};

// |E_p f - E_q f| <= width(f) * TV(p, q) for bounded f.
inline PropertyOutcome check_expectation_bound(std::uint64_t seed,
                                               std::size_t iters) {
  Rng rng(seed);
  PropertyOutcome out;
  for (std::size_t i = 0; i < iters; ++i) {
    std::size_t k = random_size(rng, 2, 6);
    Pmf p = random_pmf(rng, k), q = random_pmf(rng, k);
    double width = 10.0 * rng.next_u01();
    double base = 20.0 * (rng.next_u01() - 0.5);
    double lo = base, hi = base;
    double diff = 0.0;
    std::vector<double> f(k);
    for (std::size_t s = 0; s < k; ++s) {
      f[s] = base + width * rng.next_u01();
      lo = std::min(lo, f[s]);
      hi = std::max(hi, f[s]);
      diff += (p[s] - q[s]) * f[s];
    }
    double lhs = std::abs(diff);
    double rhs = (hi - lo) * total_variation(p, q);
    out.max_gap = std::max(out.max_gap, lhs - rhs);
    if (lhs > rhs + 1e-12) ++out.violations;
  }
  return out;
}

// TV(p, q) <= TV(p, r) + TV(r, q).
inline PropertyOutcome check_triangle(std::uint64_t seed, std::size_t iters) {
  Rng rng(seed);
  PropertyOutcome out;
  for (std::size_t i = 0; i < iters; ++i) {
    std::size_t k = random_size(rng, 2, 8);
    Pmf p = random_pmf(rng, k), q = random_pmf(rng, k), r = random_pmf(rng, k);
    double lhs = total_variation(p, q);
    double rhs = total_variation(p, r) + total_variation(r, q);
    out.max_gap = std::max(out.max_gap, lhs - rhs);
    if (lhs > rhs + 1e-12) ++out.violations;
  }
  return out;
}

// TV is preserved exactly when both inputs pass through the same channel.
inline PropertyOutcome check_channel_invariance(std::uint64_t seed,
                                                std::size_t iters,
                                                double tol) {
  Rng rng(seed);
  PropertyOutcome out;
  for (std::size_t i = 0; i < iters; ++i) {
    std::size_t k = random_size(rng, 2, 5);
    std::size_t m = random_size(rng, 2, 5);
    Pmf p = random_pmf(rng, k), q = random_pmf(rng, k);
    Channel ch = random_channel(rng, k, m);
    double gap = std::abs(total_variation(compose(p, ch), compose(q, ch)) -
                          total_variation(p, q));
    out.max_gap = std::max(out.max_gap, gap);
    if (gap > tol) ++out.violations;
  }
  return out;
}

// TV of matching marginals <= TV of the joints.
inline PropertyOutcome check_marginal_contraction(std::uint64_t seed,
                                                  std::size_t iters) {
  Rng rng(seed);
  PropertyOutcome out;
  for (std::size_t i = 0; i < iters; ++i) {
    std::size_t a = random_size(rng, 2, 5), b = random_size(rng, 2, 5);
    JointPmf p = random_joint(rng, {a, b});
    JointPmf q = random_joint(rng, {a, b});
    double joint_tv = total_variation(p, q);
    for (std::size_t axis = 0; axis < 2; ++axis) {
      double lhs = total_variation(marginal(p, axis), marginal(q, axis));
      out.max_gap = std::max(out.max_gap, lhs - joint_tv);
      if (lhs > joint_tv + 1e-12) ++out.violations;
    }
  }
  return out;
}

// For a triple (U, V, X) with disagreement mass P[U != V] = delta, the two
// pair marginals (U, X) and (V, X) differ by at most delta in TV.
inline PropertyOutcome check_disagreement_bound(std::uint64_t seed,
                                                std::size_t iters) {
  Rng rng(seed);
  PropertyOutcome out;
  for (std::size_t i = 0; i < iters; ++i) {
    std::size_t k = random_size(rng, 2, 4);
    std::size_t nx = random_size(rng, 2, 4);
    double delta = 0.4 * rng.next_u01();
    std::vector<double> table(k * k * nx, 0.0);
    double diag_mass = 0.0, off_mass = 0.0;
    for (std::size_t u = 0; u < k; ++u)
      for (std::size_t v = 0; v < k; ++v)
        for (std::size_t x = 0; x < nx; ++x) {
          double w = rng.next_u01() + 1e-6;
          table[(u * k + v) * nx + x] = w;
          (u == v ? diag_mass : off_mass) += w;
        }
    for (std::size_t u = 0; u < k; ++u)
      for (std::size_t v = 0; v < k; ++v)
        for (std::size_t x = 0; x < nx; ++x) {
          double& cell = table[(u * k + v) * nx + x];
          cell *= (u == v) ? (1.0 - delta) / diag_mass : delta / off_mass;
        }
    JointPmf joint({k, k, nx}, table);
    double mismatch = 0.0;
    for (std::size_t u = 0; u < k; ++u)
      for (std::size_t v = 0; v < k; ++v)
        for (std::size_t x = 0; x < nx; ++x)
          if (u != v) mismatch += joint.at(u, v, x);
    double lhs = total_variation(sum_out(joint, 1), sum_out(joint, 0));
    out.max_gap = std::max(out.max_gap, lhs - mismatch);
    if (lhs > mismatch + 1e-12) ++out.violations;
  }
  return out;
}

}  // namespace sclab::testing
