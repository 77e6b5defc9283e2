// Brute-force certification of the side-information solver on the standard
// 2x2 fixture: X uniform binary, side channel BSC(0.25), Hamming distortion,
// target D = 0.05, auxiliary cardinality 3.
//
// Sweeps both channel rows over the 3-simplex discretized with 201 points per
// parameter (step 0.005), keeps the minimum conditional rate among channels
// whose greedy-reconstruction distortion meets the target, and prints it.
// The resulting value is frozen into test_rd.cpp as a regression constant;
// this tool exists so the constant can be re-derived from scratch.
//
// All arithmetic here is deliberately independent of the library's
// probability ops: plain loops and std::log2 only.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "sclab/parallel.hpp"

int main() {
  const double target_d = 0.05;
  const int denom = 200;  // 201 grid points per parameter

  // P(x, b) for X uniform, B = X through BSC(0.25)
  double pxb[2][2] = {{0.5 * 0.75, 0.5 * 0.25}, {0.5 * 0.25, 0.5 * 0.75}};

  // enumerate one row of the channel: (a/denom, b/denom, 1 - (a+b)/denom)
  std::vector<std::array<double, 3>> rows;
  for (int a = 0; a <= denom; ++a)
    for (int b = 0; a + b <= denom; ++b)
      rows.push_back({a / double(denom), b / double(denom),
                      (denom - a - b) / double(denom)});
  std::printf("rows per source symbol: %zu (%zu channels)\n", rows.size(),
              rows.size() * rows.size());

  const std::size_t count = rows.size();
  std::vector<double> best_rate(count, 1e300);
  std::vector<std::size_t> best_j(count, 0);
  std::vector<std::size_t> feasible(count, 0);

  auto t0 = std::chrono::steady_clock::now();
  sclab::parallel_for(count, sclab::default_thread_count(), [&](std::size_t i) {
    const auto& r0 = rows[i];
    for (std::size_t j = 0; j < count; ++j) {
      const auto& r1 = rows[j];
      // greedy reconstruction distortion: per (v, b) cell the cheaper of the
      // two source symbols under Hamming cost
      double dist = 0.0;
      for (int v = 0; v < 3; ++v)
        for (int b = 0; b < 2; ++b) {
          double m0 = pxb[0][b] * r0[v];  // cost of reconstructing 1
          double m1 = pxb[1][b] * r1[v];  // cost of reconstructing 0
          dist += m0 < m1 ? m0 : m1;
        }
      if (dist > target_d + 1e-12) continue;
      ++feasible[i];
      // conditional rate I(X;V|B), direct summation
      double pb[2] = {pxb[0][0] + pxb[1][0], pxb[0][1] + pxb[1][1]};
      double pvb[3][2], rate = 0.0;
      for (int v = 0; v < 3; ++v)
        for (int b = 0; b < 2; ++b)
          pvb[v][b] = pxb[0][b] * r0[v] + pxb[1][b] * r1[v];
      for (int x = 0; x < 2; ++x) {
        const auto& row = x == 0 ? r0 : r1;
        for (int v = 0; v < 3; ++v)
          for (int b = 0; b < 2; ++b) {
            double w = pxb[x][b] * row[v];
            if (w > 0.0 && pvb[v][b] > 0.0) {
              rate += w * std::log2(w * pb[b] / (pxb[x][b] * pvb[v][b]));
            }
          }
      }
      if (rate < best_rate[i]) {
        best_rate[i] = rate;
        best_j[i] = j;
      }
    }
  });
  auto t1 = std::chrono::steady_clock::now();

  double best = 1e300;
  std::size_t bi = 0;
  std::size_t feasible_total = 0;
  for (std::size_t i = 0; i < count; ++i) {
    feasible_total += feasible[i];
    if (best_rate[i] < best) {
      best = best_rate[i];
      bi = i;
    }
  }
  const auto& r0 = rows[bi];
  const auto& r1 = rows[best_j[bi]];
  std::printf("feasible grid channels: %zu\n", feasible_total);
  std::printf("min rate: %.9f bits\n", best);
  std::printf("row 0: (%.3f, %.3f, %.3f)\n", r0[0], r0[1], r0[2]);
  std::printf("row 1: (%.3f, %.3f, %.3f)\n", r1[0], r1[1], r1[2]);
  std::printf("elapsed: %.1f s\n",
              std::chrono::duration<double>(t1 - t0).count());
  return 0;
}
