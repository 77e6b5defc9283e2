#pragma once

#include "sclab/prob.hpp"

namespace sclab {

/// Symbolwise reconstruction table y = phi(v, b). For the two-source decoder
/// the arguments are (u1, u2) in that order.
class ReconstructionMap {
 public:
  ReconstructionMap(std::size_t num_v, std::size_t num_b,
                    std::size_t num_outputs, std::vector<Symbol> table);

  static ReconstructionMap first_argument(std::size_t num_v, std::size_t num_b);
  static ReconstructionMap second_argument(std::size_t num_v,
                                           std::size_t num_b);

  std::size_t num_v() const { return num_v_; }
  std::size_t num_b() const { return num_b_; }
  std::size_t num_outputs() const { return num_y_; }
  Symbol operator()(std::size_t v, std::size_t b) const {
    return table_[v * num_b_ + b];
  }
  const std::vector<Symbol>& table() const { return table_; }

 private:
  std::size_t num_v_;
  std::size_t num_b_;
  std::size_t num_y_;
  std::vector<Symbol> table_;
};

// phi chosen per (v, b) cell to minimize expected distortion against a joint
// over (X, V, B); the objective decomposes per cell, so the greedy choice is
// exact. Ties break to the lowest reproduction symbol.
ReconstructionMap greedy_reconstruction(const JointPmf& joint_xvb,
                                        const DistortionMeasure& d);

// E[d(X, phi(V, B))] for a 3-axis joint over (X, V, B).
double reconstruction_distortion(const JointPmf& joint_xvb,
                                 const ReconstructionMap& phi,
                                 const DistortionMeasure& d);

}  // namespace sclab
