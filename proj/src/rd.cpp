#include "sclab/rd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sclab/rng.hpp"

namespace sclab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Rows = std::vector<std::vector<double>>;

// ---------------------------------------------------------------------------
// Single-source solver: alternating minimization at a fixed slope.
// ---------------------------------------------------------------------------

struct BaSlope {
  Rows rows;  // P(y|x)
  double rate_bits = 0.0;
  double distortion = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

BaSlope ba_fixed_slope(const Pmf& p, const DistortionMeasure& d, double s) {
  const std::size_t nx = p.size(), ny = d.num_reproductions();
  std::vector<double> dmin(nx, kInf);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) dmin[x] = std::min(dmin[x], d(x, y));

  std::vector<double> q(ny, 1.0 / static_cast<double>(ny));
  std::vector<double> qout(ny);
  BaSlope out;
  out.rows.assign(nx, std::vector<double>(ny, 0.0));
  double prev_rate = kInf;
  for (std::size_t iter = 1; iter <= 10000; ++iter) {
    for (std::size_t x = 0; x < nx; ++x) {
      double c = 0.0;
      for (std::size_t y = 0; y < ny; ++y) {
        out.rows[x][y] = q[y] * std::exp(-s * (d(x, y) - dmin[x]));
        c += out.rows[x][y];
      }
      if (c > 0.0) {
        for (double& v : out.rows[x]) v /= c;
      } else {
        // Extreme slope underflow: the limit is the min-distortion assignment.
        std::size_t y0 = 0;
        for (std::size_t y = 0; y < ny; ++y)
          if (d(x, y) < d(x, y0)) y0 = y;
        for (std::size_t y = 0; y < ny; ++y) out.rows[x][y] = (y == y0);
      }
    }
    std::fill(qout.begin(), qout.end(), 0.0);
    double dist = 0.0;
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y) {
        double m = p[x] * out.rows[x][y];
        qout[y] += m;
        dist += m * d(x, y);
      }
    double rate = 0.0;
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y) {
        double v = out.rows[x][y];
        if (v > 0.0 && qout[y] > 0.0) rate += p[x] * v * std::log2(v / qout[y]);
      }
    out.rate_bits = std::max(0.0, rate);
    out.distortion = dist;
    out.iterations = iter;
    if (std::abs(rate - prev_rate) < 1e-9) {
      out.converged = true;
      break;
    }
    prev_rate = rate;
    q = qout;
  }
  return out;
}

double zero_rate_distortion(const Pmf& p, const DistortionMeasure& d,
                            std::size_t* best_y = nullptr) {
  double best = kInf;
  std::size_t by = 0;
  for (std::size_t y = 0; y < d.num_reproductions(); ++y) {
    double cost = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x) cost += p[x] * d(x, y);
    if (cost < best) {
      best = cost;
      by = y;
    }
  }
  if (best_y) *best_y = by;
  return best;
}

double min_feasible_distortion(const Pmf& p, const DistortionMeasure& d) {
  double acc = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    double m = kInf;
    for (std::size_t y = 0; y < d.num_reproductions(); ++y)
      m = std::min(m, d(x, y));
    acc += p[x] * m;
  }
  return acc;
}

}  // namespace

const char* to_string(SolverStatus status) {
  switch (status) {
    case SolverStatus::kConverged: return "converged";
    case SolverStatus::kZeroRate: return "zero_rate";
    case SolverStatus::kIterationLimit: return "iteration_limit";
    case SolverStatus::kExact: return "exact";
  }
  return "unknown";
}

RateDistortionPoint blahut_arimoto_rd(const Pmf& source,
                                      const DistortionMeasure& d,
                                      double target_d) {
  if (source.size() != d.num_sources()) {
    throw std::invalid_argument("blahut_arimoto_rd: alphabet mismatch");
  }
  if (!(target_d >= 0.0)) {
    throw std::invalid_argument("blahut_arimoto_rd: negative target distortion");
  }
  RateDistortionPoint point;

  std::size_t best_y = 0;
  const double d_zero_rate = zero_rate_distortion(source, d, &best_y);
  if (target_d >= d_zero_rate - 1e-12) {
    Rows rows(source.size(), std::vector<double>(d.num_reproductions(), 0.0));
    for (auto& r : rows) r[best_y] = 1.0;
    Channel ch = Channel::trusted(rows);
    JointPmf joint = compose(source, ch);
    point.rates = {mutual_information(joint)};
    point.distortions = {expected_distortion(joint, d)};
    point.achieving_channels = {ch};
    point.status = SolverStatus::kZeroRate;
    return point;
  }
  if (target_d < min_feasible_distortion(source, d) - 1e-12) {
    throw std::invalid_argument(
        "blahut_arimoto_rd: target below the minimum achievable distortion");
  }

  std::size_t total_iters = 0;
  auto eval = [&](double s) {
    BaSlope r = ba_fixed_slope(source, d, s);
    total_iters += r.iterations;
    return r;
  };

  // Bracket the slope: start at [0, 50] nats per distortion unit and double
  // the upper end until the achieved distortion falls at or below target.
  double lo = 0.0, hi = 50.0;
  BaSlope at_hi = eval(hi);
  while (at_hi.distortion > target_d + 0.5e-6) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e13) {
      throw std::invalid_argument(
          "blahut_arimoto_rd: target distortion is not reachable");
    }
    at_hi = eval(hi);
  }
  BaSlope best = at_hi;
  bool inner_converged = best.converged;
  for (int i = 0; i < 300 && (target_d - best.distortion) > 1e-6; ++i) {
    double mid = 0.5 * (lo + hi);
    BaSlope at_mid = eval(mid);
    if (at_mid.distortion <= target_d + 0.5e-6) {
      hi = mid;
      best = at_mid;
      inner_converged = at_mid.converged;
    } else {
      lo = mid;
    }
    if (hi - lo < 1e-14 * std::max(1.0, hi)) break;
  }

  Channel ch = Channel::trusted(best.rows);
  JointPmf joint = compose(source, ch);
  point.rates = {mutual_information(joint)};
  point.distortions = {expected_distortion(joint, d)};
  point.achieving_channels = {ch};
  point.iterations = total_iters;
  point.status = (inner_converged &&
                  std::abs(point.distortions[0] - target_d) <= 1e-6)
                     ? SolverStatus::kConverged
                     : SolverStatus::kIterationLimit;
  return point;
}

// ---------------------------------------------------------------------------
// Side-information solver.
// ---------------------------------------------------------------------------

JointPmf wz_joint_xvb(const JointPmf& joint_xb, const Channel& test_channel) {
  if (joint_xb.arity() != 2 || test_channel.num_inputs() != joint_xb.dim(0)) {
    throw std::invalid_argument("wz_joint_xvb: shape mismatch");
  }
  const std::size_t nx = joint_xb.dim(0), nb = joint_xb.dim(1),
                    nv = test_channel.num_outputs();
  std::vector<double> table(nx * nv * nb);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t v = 0; v < nv; ++v)
      for (std::size_t b = 0; b < nb; ++b)
        table[(x * nv + v) * nb + b] = joint_xb.at(x, b) * test_channel(v, x);
  return JointPmf::trusted({nx, nv, nb}, std::move(table), {"x", "v", "b"});
}

namespace {

struct WzProblem {
  const JointPmf& joint_xb;
  const DistortionMeasure& d;
  std::size_t nx, nb, nv, ny;
  std::vector<double> p_x, p_b;
  Rows b_given_x;  // P(b|x)
  Rows x_given_b;  // P(x|b)
};

struct WzCandidate {
  double rate = kInf;
  double distortion = kInf;
  Rows rows;
};

struct WzEval {
  double rate;
  double distortion;
};

WzEval wz_evaluate(const WzProblem& pr, const Rows& rows) {
  Channel ch = Channel::trusted(rows);
  JointPmf joint = wz_joint_xvb(pr.joint_xb, ch);
  ReconstructionMap phi = greedy_reconstruction(joint, pr.d);
  return {conditional_mutual_information(joint),
          reconstruction_distortion(joint, phi, pr.d)};
}

// One run of the alternating descent on I(X;V|B) + s * E[d], from init.
// Returns the final channel plus its Lagrangian value and distortion.
struct WzDescent {
  Rows rows;
  double lagrangian = kInf;
  double distortion = 0.0;
  std::size_t iterations = 0;
};

WzDescent wz_descend(const WzProblem& pr, double s, Rows rows,
                     std::size_t max_iters, double tol) {
  const std::size_t nx = pr.nx, nb = pr.nb, nv = pr.nv, ny = pr.ny;
  Rows q(nb, std::vector<double>(nv, 0.0));        // P(v|b)
  std::vector<Symbol> phi(nv * nb, 0);
  std::vector<double> exponent(nv);
  WzDescent out;
  double prev = kInf;
  for (std::size_t iter = 1; iter <= max_iters; ++iter) {
    // induced posterior of the auxiliary given side information
    for (std::size_t b = 0; b < nb; ++b) {
      double mass = 0.0;
      for (std::size_t v = 0; v < nv; ++v) {
        double acc = 0.0;
        for (std::size_t x = 0; x < nx; ++x)
          acc += pr.x_given_b[b][x] * rows[x][v];
        q[b][v] = acc;
        mass += acc;
      }
      if (mass <= 0.0) {
        for (double& v : q[b]) v = 1.0 / static_cast<double>(nv);
      }
    }
    // greedy reconstruction cells under the current channel
    for (std::size_t v = 0; v < nv; ++v)
      for (std::size_t b = 0; b < nb; ++b) {
        double best = kInf;
        Symbol besty = 0;
        for (std::size_t y = 0; y < ny; ++y) {
          double cost = 0.0;
          for (std::size_t x = 0; x < nx; ++x)
            cost += pr.p_x[x] * pr.b_given_x[x][b] * rows[x][v] * pr.d(x, y);
          if (cost < best) {
            best = cost;
            besty = static_cast<Symbol>(y);
          }
        }
        phi[v * nb + b] = besty;
      }
    // Gibbs update of each channel row
    for (std::size_t x = 0; x < nx; ++x) {
      double peak = -kInf;
      for (std::size_t v = 0; v < nv; ++v) {
        double e = 0.0;
        for (std::size_t b = 0; b < nb; ++b) {
          double w = pr.b_given_x[x][b];
          if (w == 0.0) continue;
          if (q[b][v] <= 0.0) {
            e = -kInf;
            break;
          }
          e += w * (std::log(q[b][v]) - s * pr.d(x, phi[v * nb + b]));
        }
        exponent[v] = e;
        peak = std::max(peak, e);
      }
      if (peak == -kInf) {
        for (double& v : rows[x]) v = 1.0 / static_cast<double>(nv);
        continue;
      }
      double total = 0.0;
      for (std::size_t v = 0; v < nv; ++v) {
        rows[x][v] = exponent[v] == -kInf ? 0.0 : std::exp(exponent[v] - peak);
        total += rows[x][v];
      }
      for (double& v : rows[x]) v /= total;
    }
    // Lagrangian (nats) under the updated triple
    double value = 0.0, dist = 0.0;
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t b = 0; b < nb; ++b) {
        double w = pr.p_x[x] * pr.b_given_x[x][b];
        if (w == 0.0) continue;
        for (std::size_t v = 0; v < nv; ++v) {
          double m = w * rows[x][v];
          if (m == 0.0) continue;
          value += m * std::log(rows[x][v] / q[b][v]);
          dist += m * pr.d(x, phi[v * nb + b]);
        }
      }
    value += s * dist;
    out.iterations = iter;
    out.distortion = dist;
    out.lagrangian = value;
    if (prev - value < tol) break;
    prev = value;
  }
  out.rows = std::move(rows);
  return out;
}

// Compositions of `denom` into `parts` nonnegative integers, as simplex rows.
void simplex_grid(std::size_t parts, std::size_t denom,
                  std::vector<double>& row, std::size_t pos,
                  std::size_t remaining, std::vector<std::vector<double>>& out) {
  if (pos + 1 == parts) {
    row[pos] = static_cast<double>(remaining) / static_cast<double>(denom);
    out.push_back(row);
    return;
  }
  for (std::size_t take = 0; take <= remaining; ++take) {
    row[pos] = static_cast<double>(take) / static_cast<double>(denom);
    simplex_grid(parts, denom, row, pos + 1, remaining - take, out);
  }
}

}  // namespace

RateDistortionPoint wyner_ziv_rate(const JointPmf& joint_xb,
                                   const DistortionMeasure& d, double target_d,
                                   const WynerZivOptions& options) {
  if (joint_xb.arity() != 2 || joint_xb.dim(0) != d.num_sources()) {
    throw std::invalid_argument("wyner_ziv_rate: shape mismatch");
  }
  if (!(target_d >= 0.0)) {
    throw std::invalid_argument("wyner_ziv_rate: negative target distortion");
  }

  WzProblem pr{joint_xb,
               d,
               joint_xb.dim(0),
               joint_xb.dim(1),
               joint_xb.dim(0) + 1,  // auxiliary cardinality |X| + 1
               d.num_reproductions(),
               marginal(joint_xb, 0).probs(),
               marginal(joint_xb, 1).probs(),
               {},
               {}};
  {
    Channel bx = condition_on(joint_xb, 0);
    Channel xb = condition_on(joint_xb, 1);
    for (std::size_t x = 0; x < pr.nx; ++x) pr.b_given_x.push_back(bx.row(x));
    for (std::size_t b = 0; b < pr.nb; ++b) pr.x_given_b.push_back(xb.row(b));
  }

  auto finish = [&](const WzCandidate& c, SolverStatus status,
                    std::size_t iters) {
    Channel ch = Channel::trusted(c.rows);
    JointPmf joint = wz_joint_xvb(joint_xb, ch);
    ReconstructionMap phi = greedy_reconstruction(joint, d);
    RateDistortionPoint point;
    point.rates = {conditional_mutual_information(joint)};
    point.distortions = {reconstruction_distortion(joint, phi, d)};
    point.achieving_channels = {ch};
    point.achieving_maps = {phi};
    point.status = status;
    point.iterations = iters;
    return point;
  };

  // Zero-rate benchmark: constant auxiliary, reconstruction straight from the
  // side information.
  WzCandidate zero_rate;
  zero_rate.rows.assign(pr.nx, std::vector<double>(pr.nv, 0.0));
  for (auto& r : zero_rate.rows) r[pr.nv - 1] = 1.0;
  {
    WzEval e = wz_evaluate(pr, zero_rate.rows);
    zero_rate.rate = e.rate;
    zero_rate.distortion = e.distortion;
  }
  if (target_d >= zero_rate.distortion - 1e-12) {
    return finish(zero_rate, SolverStatus::kZeroRate, 0);
  }

  WzCandidate best;
  auto admit = [&](const Rows& rows, const WzEval& e) {
    if (e.distortion <= target_d + 1e-9 && e.rate < best.rate) {
      best.rate = e.rate;
      best.distortion = e.distortion;
      best.rows = rows;
    }
  };

  // Deterministic full-information embedding; feasible whenever the problem is.
  {
    Rows rows(pr.nx, std::vector<double>(pr.nv, 0.0));
    for (std::size_t x = 0; x < pr.nx; ++x) rows[x][x] = 1.0;
    admit(rows, wz_evaluate(pr, rows));
  }
  if (best.rate == kInf &&
      target_d < min_feasible_distortion(marginal(joint_xb, 0), d) - 1e-12) {
    throw std::invalid_argument(
        "wyner_ziv_rate: target below the minimum achievable distortion");
  }

  // Deterministic grid pass over the channel parameters (binary sources).
  std::vector<Rows> grid_inits;
  if (options.grid_pass && pr.nx == 2) {
    std::vector<std::vector<double>> rows_grid;
    std::vector<double> scratch(pr.nv, 0.0);
    simplex_grid(pr.nv, 10, scratch, 0, 10, rows_grid);
    std::vector<std::pair<double, Rows>> feasible;
    for (const auto& r0 : rows_grid)
      for (const auto& r1 : rows_grid) {
        Rows rows = {r0, r1};
        WzEval e = wz_evaluate(pr, rows);
        admit(rows, e);
        if (e.distortion <= target_d + 1e-9) feasible.push_back({e.rate, rows});
      }
    std::sort(feasible.begin(), feasible.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < feasible.size() && i < 3; ++i)
      grid_inits.push_back(feasible[i].second);
  }

  // Multi-start init list, fixed across slopes.
  std::vector<Rows> inits;
  {
    Rows soft(pr.nx, std::vector<double>(pr.nv, 0.0));
    for (std::size_t x = 0; x < pr.nx; ++x)
      for (std::size_t v = 0; v < pr.nv; ++v)
        soft[x][v] = v == x ? 0.8 : 0.2 / static_cast<double>(pr.nv - 1);
    inits.push_back(soft);
    for (std::size_t x = 0; x < pr.nx; ++x)
      for (std::size_t v = 0; v < pr.nv; ++v)
        soft[x][v] = v == x ? 0.5 : 0.5 / static_cast<double>(pr.nv - 1);
    inits.push_back(soft);
    Rows near_const(pr.nx, std::vector<double>(pr.nv, 0.05 / (pr.nv - 1.0)));
    for (auto& r : near_const) r[pr.nv - 1] = 0.95;
    inits.push_back(near_const);
    for (const auto& g : grid_inits) inits.push_back(g);
    std::size_t r = inits.size();
    while (inits.size() < options.restarts) {
      Rng rng(derive_seed(options.seed, "wz-init", r++));
      Rows rows(pr.nx, std::vector<double>(pr.nv, 0.0));
      for (auto& row : rows) {
        double total = 0.0;
        for (double& v : row) {
          v = -std::log(std::max(rng.next_u01(), 1e-300));
          total += v;
        }
        for (double& v : row) v /= total;
      }
      inits.push_back(rows);
    }
  }

  std::size_t total_iters = 0;
  auto solve_slope = [&](double s) {
    double best_lagrangian = kInf;
    double dist_at_best = kInf;
    for (const auto& init : inits) {
      WzDescent run = wz_descend(pr, s, init, options.max_alternations,
                                 options.alternation_tol);
      total_iters += run.iterations;
      WzEval e = wz_evaluate(pr, run.rows);
      admit(run.rows, e);
      if (run.lagrangian < best_lagrangian) {
        best_lagrangian = run.lagrangian;
        dist_at_best = e.distortion;
      }
    }
    return dist_at_best;
  };

  double lo = 0.0, hi = 1.0;
  double dist_hi = solve_slope(hi);
  while (dist_hi > target_d + 0.5e-6 && hi < 1e13) {
    lo = hi;
    hi *= 2.0;
    dist_hi = solve_slope(hi);
  }
  for (std::size_t i = 0; i < options.bisection_iters; ++i) {
    double mid = 0.5 * (lo + hi);
    if (solve_slope(mid) <= target_d + 0.5e-6) {
      hi = mid;
    } else {
      lo = mid;
    }
    if (hi - lo < 1e-12 * std::max(1.0, hi)) break;
  }

  if (best.rate == kInf) {
    throw std::invalid_argument(
        "wyner_ziv_rate: no feasible channel found for the target distortion");
  }
  return finish(best, SolverStatus::kConverged, total_iters);
}

// ---------------------------------------------------------------------------
// Two-encoder corner points.
// ---------------------------------------------------------------------------

namespace {

void check_bt_shapes(const JointPmf& joint_x1x2, const Channel& ch1,
                     const Channel& ch2) {
  if (joint_x1x2.arity() != 2 || ch1.num_inputs() != joint_x1x2.dim(0) ||
      ch2.num_inputs() != joint_x1x2.dim(1)) {
    throw std::invalid_argument("berger_tung: joint/channel shape mismatch");
  }
}

// 3-axis joint (X2, U2, U1) under P(x1,x2) ch1(u1|x1) ch2(u2|x2); swapping
// the roles of the encoders gives (X1, U1, U2).
JointPmf bt_joint_second_given_first(const JointPmf& joint_x1x2,
                                     const Channel& ch1, const Channel& ch2) {
  const std::size_t n1 = joint_x1x2.dim(0), n2 = joint_x1x2.dim(1);
  const std::size_t nu1 = ch1.num_outputs(), nu2 = ch2.num_outputs();
  std::vector<double> table(n2 * nu2 * nu1, 0.0);
  for (std::size_t x1 = 0; x1 < n1; ++x1)
    for (std::size_t x2 = 0; x2 < n2; ++x2) {
      double pj = joint_x1x2.at(x1, x2);
      if (pj == 0.0) continue;
      for (std::size_t u1 = 0; u1 < nu1; ++u1) {
        double w = pj * ch1(u1, x1);
        for (std::size_t u2 = 0; u2 < nu2; ++u2)
          table[(x2 * nu2 + u2) * nu1 + u1] += w * ch2(u2, x2);
      }
    }
  return JointPmf::trusted({n2, nu2, nu1}, std::move(table),
                           {"x2", "u2", "u1"});
}

JointPmf transpose2(const JointPmf& j) {
  std::vector<double> t(j.flat().size());
  for (std::size_t a = 0; a < j.dim(0); ++a)
    for (std::size_t b = 0; b < j.dim(1); ++b)
      t[b * j.dim(0) + a] = j.at(a, b);
  return JointPmf::trusted({j.dim(1), j.dim(0)}, std::move(t),
                           {j.axes()[1], j.axes()[0]});
}

}  // namespace

JointPmf bt_joint_u1u2(const JointPmf& joint_x1x2, const Channel& ch1,
                       const Channel& ch2) {
  check_bt_shapes(joint_x1x2, ch1, ch2);
  const std::size_t nu1 = ch1.num_outputs(), nu2 = ch2.num_outputs();
  std::vector<double> table(nu1 * nu2, 0.0);
  for (std::size_t x1 = 0; x1 < joint_x1x2.dim(0); ++x1)
    for (std::size_t x2 = 0; x2 < joint_x1x2.dim(1); ++x2) {
      double pj = joint_x1x2.at(x1, x2);
      if (pj == 0.0) continue;
      for (std::size_t u1 = 0; u1 < nu1; ++u1) {
        double w = pj * ch1(u1, x1);
        for (std::size_t u2 = 0; u2 < nu2; ++u2)
          table[u1 * nu2 + u2] += w * ch2(u2, x2);
      }
    }
  return JointPmf::trusted({nu1, nu2}, std::move(table), {"u1", "u2"});
}

JointPmf bt_joint_xk_u1u2(const JointPmf& joint_x1x2, const Channel& ch1,
                          const Channel& ch2, std::size_t source_index) {
  check_bt_shapes(joint_x1x2, ch1, ch2);
  if (source_index > 1) {
    throw std::invalid_argument("bt_joint_xk_u1u2: source index must be 0 or 1");
  }
  const std::size_t n1 = joint_x1x2.dim(0), n2 = joint_x1x2.dim(1);
  const std::size_t nu1 = ch1.num_outputs(), nu2 = ch2.num_outputs();
  const std::size_t nk = source_index == 0 ? n1 : n2;
  std::vector<double> table(nk * nu1 * nu2, 0.0);
  for (std::size_t x1 = 0; x1 < n1; ++x1)
    for (std::size_t x2 = 0; x2 < n2; ++x2) {
      double pj = joint_x1x2.at(x1, x2);
      if (pj == 0.0) continue;
      const std::size_t xk = source_index == 0 ? x1 : x2;
      for (std::size_t u1 = 0; u1 < nu1; ++u1) {
        double w = pj * ch1(u1, x1);
        for (std::size_t u2 = 0; u2 < nu2; ++u2)
          table[(xk * nu1 + u1) * nu2 + u2] += w * ch2(u2, x2);
      }
    }
  return JointPmf::trusted({nk, nu1, nu2}, std::move(table),
                           {source_index == 0 ? "x1" : "x2", "u1", "u2"});
}

RateDistortionPoint berger_tung_corner(const JointPmf& joint_x1x2,
                                       const Channel& ch1, const Channel& ch2,
                                       const ReconstructionMap& phi1,
                                       const ReconstructionMap& phi2,
                                       const DistortionMeasure& d1,
                                       const DistortionMeasure& d2,
                                       Corner corner) {
  check_bt_shapes(joint_x1x2, ch1, ch2);
  const Pmf p1 = marginal(joint_x1x2, 0);
  const Pmf p2 = marginal(joint_x1x2, 1);

  double r1 = 0.0, r2 = 0.0;
  if (corner == Corner::kFirstDecodedFirst) {
    r1 = mutual_information(compose(p1, ch1));
    r2 = conditional_mutual_information(
        bt_joint_second_given_first(joint_x1x2, ch1, ch2));
  } else {
    r2 = mutual_information(compose(p2, ch2));
    r1 = conditional_mutual_information(
        bt_joint_second_given_first(transpose2(joint_x1x2), ch2, ch1));
  }

  JointPmf j1 = bt_joint_xk_u1u2(joint_x1x2, ch1, ch2, 0);
  JointPmf j2 = bt_joint_xk_u1u2(joint_x1x2, ch1, ch2, 1);

  RateDistortionPoint point;
  point.rates = {r1, r2};
  point.distortions = {reconstruction_distortion(j1, phi1, d1),
                       reconstruction_distortion(j2, phi2, d2)};
  point.achieving_channels = {ch1, ch2};
  point.achieving_maps = {phi1, phi2};
  point.status = SolverStatus::kExact;
  return point;
}

RateDistortionPoint time_share(const RateDistortionPoint& p1,
                               const RateDistortionPoint& p2, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("time_share: lambda outside [0, 1]");
  }
  if (p1.rates.size() != p2.rates.size() ||
      p1.distortions.size() != p2.distortions.size()) {
    throw std::invalid_argument("time_share: incompatible point shapes");
  }
  RateDistortionPoint out;
  for (std::size_t i = 0; i < p1.rates.size(); ++i)
    out.rates.push_back(lambda * p1.rates[i] + (1.0 - lambda) * p2.rates[i]);
  for (std::size_t i = 0; i < p1.distortions.size(); ++i)
    out.distortions.push_back(lambda * p1.distortions[i] +
                              (1.0 - lambda) * p2.distortions[i]);
  out.status = SolverStatus::kExact;
  return out;
}

}  // namespace sclab
