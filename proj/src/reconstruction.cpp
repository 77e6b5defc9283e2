#include "sclab/reconstruction.hpp"

#include <limits>
#include <stdexcept>

namespace sclab {

ReconstructionMap::ReconstructionMap(std::size_t num_v, std::size_t num_b,
                                     std::size_t num_outputs,
                                     std::vector<Symbol> table)
    : num_v_(num_v), num_b_(num_b), num_y_(num_outputs),
      table_(std::move(table)) {
  if (num_v_ == 0 || num_b_ == 0 || num_y_ == 0) {
    throw std::invalid_argument("ReconstructionMap: zero-size alphabet");
  }
  if (table_.size() != num_v_ * num_b_) {
    throw std::invalid_argument("ReconstructionMap: table size mismatch");
  }
  for (Symbol y : table_) {
    if (y >= num_y_) {
      throw std::invalid_argument("ReconstructionMap: output out of range");
    }
  }
}

ReconstructionMap ReconstructionMap::first_argument(std::size_t num_v,
                                                    std::size_t num_b) {
  std::vector<Symbol> t(num_v * num_b);
  for (std::size_t v = 0; v < num_v; ++v)
    for (std::size_t b = 0; b < num_b; ++b)
      t[v * num_b + b] = static_cast<Symbol>(v);
  return ReconstructionMap(num_v, num_b, num_v, std::move(t));
}

ReconstructionMap ReconstructionMap::second_argument(std::size_t num_v,
                                                     std::size_t num_b) {
  std::vector<Symbol> t(num_v * num_b);
  for (std::size_t v = 0; v < num_v; ++v)
    for (std::size_t b = 0; b < num_b; ++b)
      t[v * num_b + b] = static_cast<Symbol>(b);
  return ReconstructionMap(num_v, num_b, num_b, std::move(t));
}

ReconstructionMap greedy_reconstruction(const JointPmf& joint_xvb,
                                        const DistortionMeasure& d) {
  if (joint_xvb.arity() != 3 || joint_xvb.dim(0) != d.num_sources()) {
    throw std::invalid_argument("greedy_reconstruction: shape mismatch");
  }
  const std::size_t nx = joint_xvb.dim(0), nv = joint_xvb.dim(1),
                    nb = joint_xvb.dim(2), ny = d.num_reproductions();
  std::vector<Symbol> table(nv * nb, 0);
  for (std::size_t v = 0; v < nv; ++v)
    for (std::size_t b = 0; b < nb; ++b) {
      double best = std::numeric_limits<double>::infinity();
      Symbol best_y = 0;
      for (std::size_t y = 0; y < ny; ++y) {
        double cost = 0.0;
        for (std::size_t x = 0; x < nx; ++x)
          cost += joint_xvb.at(x, v, b) * d(x, y);
        if (cost < best) {
          best = cost;
          best_y = static_cast<Symbol>(y);
        }
      }
      table[v * nb + b] = best_y;
    }
  return ReconstructionMap(nv, nb, ny, std::move(table));
}

double reconstruction_distortion(const JointPmf& joint_xvb,
                                 const ReconstructionMap& phi,
                                 const DistortionMeasure& d) {
  if (joint_xvb.arity() != 3 || joint_xvb.dim(0) != d.num_sources() ||
      joint_xvb.dim(1) != phi.num_v() || joint_xvb.dim(2) != phi.num_b()) {
    throw std::invalid_argument("reconstruction_distortion: shape mismatch");
  }
  double acc = 0.0;
  for (std::size_t x = 0; x < joint_xvb.dim(0); ++x)
    for (std::size_t v = 0; v < joint_xvb.dim(1); ++v)
      for (std::size_t b = 0; b < joint_xvb.dim(2); ++b)
        acc += joint_xvb.at(x, v, b) * d(x, phi(v, b));
  return acc;
}

}  // namespace sclab
