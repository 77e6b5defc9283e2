#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace sclab {

using Symbol = std::uint16_t;
using SymbolSequence = std::vector<Symbol>;

// Hard cap on exact sequence-space enumeration: |alphabet|^n must stay at or
// below this for iid_extension and induced-distribution computations. Larger
// requests are rejected, never silently sampled.
inline constexpr std::size_t kEnumerationLimit = std::size_t{1} << 20;

/// Finite probability mass function. Entries are validated at construction:
/// nonnegative, summing to 1 within 1e-9. Off-simplex input is rejected, not
/// renormalized. Immutable after construction.
class Pmf {
 public:
  explicit Pmf(std::vector<double> probs);

  static Pmf uniform(std::size_t size);
  static Pmf point_mass(std::size_t size, std::size_t at);
  static Pmf bernoulli(double p_one);  // {1-p, p}

  // Construction path for exactly-computed distributions (products, mixtures,
  // normalized posteriors) whose float sums can drift slightly past the strict
  // input tolerance. Still checks nonnegativity and a 1e-6 sum backstop.
  static Pmf trusted(std::vector<double> probs);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }

  bool operator==(const Pmf&) const = default;

 private:
  struct TrustedTag {};
  Pmf(std::vector<double> probs, TrustedTag);

  std::vector<double> probs_;
};

/// Joint pmf over a 2- or 3-fold product alphabet, flattened row-major (last
/// axis fastest). Axis labels are carried for readability of dumps; they do
/// not affect any computation.
class JointPmf {
 public:
  JointPmf(std::vector<std::size_t> dims, std::vector<double> probs,
           std::vector<std::string> axes = {});

  static JointPmf trusted(std::vector<std::size_t> dims,
                          std::vector<double> probs,
                          std::vector<std::string> axes = {});

  std::size_t arity() const { return dims_.size(); }
  std::size_t dim(std::size_t axis) const;
  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<double>& flat() const { return probs_; }
  const std::vector<std::string>& axes() const { return axes_; }

  double at(std::size_t i, std::size_t j) const;
  double at(std::size_t i, std::size_t j, std::size_t k) const;

 private:
  struct TrustedTag {};
  JointPmf(std::vector<std::size_t> dims, std::vector<double> probs,
           std::vector<std::string> axes, TrustedTag);
  void check_shape();

  std::vector<std::size_t> dims_;
  std::vector<double> probs_;
  std::vector<std::string> axes_;
};

/// Row-stochastic conditional kernel P(output | input); one row per input
/// symbol, each row a valid Pmf.
class Channel {
 public:
  explicit Channel(const std::vector<std::vector<double>>& rows);

  static Channel trusted(const std::vector<std::vector<double>>& rows);
  static Channel bsc(double crossover);
  static Channel identity(std::size_t size);

  std::size_t num_inputs() const { return num_in_; }
  std::size_t num_outputs() const { return num_out_; }
  double operator()(std::size_t output, std::size_t input) const {
    return probs_[input * num_out_ + output];
  }
  std::vector<double> row(std::size_t input) const;

 private:
  Channel() = default;
  std::size_t num_in_ = 0;
  std::size_t num_out_ = 0;
  std::vector<double> probs_;  // row-major, rows indexed by input
};

/// Per-letter distortion table d(x, y) >= 0 with its maximum entry cached.
class DistortionMeasure {
 public:
  explicit DistortionMeasure(const std::vector<std::vector<double>>& table);

  static DistortionMeasure hamming(std::size_t size);

  std::size_t num_sources() const { return num_x_; }
  std::size_t num_reproductions() const { return num_y_; }
  double operator()(std::size_t x, std::size_t y) const {
    return table_[x * num_y_ + y];
  }
  double d_max() const { return d_max_; }

 private:
  std::size_t num_x_ = 0;
  std::size_t num_y_ = 0;
  std::vector<double> table_;
  double d_max_ = 0.0;
};

// --- information measures and distances (bits throughout) ---

// sup over events of |P(A) - Q(A)|, i.e. half the L1 distance.
double total_variation(const Pmf& p, const Pmf& q);
double total_variation(const JointPmf& p, const JointPmf& q);

double entropy(const Pmf& p);

// I(axis0; axis1) of a 2-axis joint, clamped at 0 against -1e-12 rounding.
double mutual_information(const JointPmf& j);

// I(axis0; axis1 | axis2) of a 3-axis joint.
double conditional_mutual_information(const JointPmf& j);

// --- structural operations ---

// joint(x, y) = p(x) * ch(y | x)
JointPmf compose(const Pmf& p, const Channel& ch);

// Single-axis marginal of `axis` (sums out all other axes).
Pmf marginal(const JointPmf& j, std::size_t axis);

// Sums out one axis of a 3-axis joint, keeping the other two in order.
JointPmf sum_out(const JointPmf& j, std::size_t axis);

// Conditional kernel of the other axis given `given_axis` of a 2-axis joint.
// Rows with zero conditioning mass become uniform (unreachable inputs).
Channel condition_on(const JointPmf& j, std::size_t given_axis);

// P(z | x) = sum_y first(y | x) * second(z | y)
Channel compose_channels(const Channel& first, const Channel& second);

// Product distribution over length-n sequences, row-major with the first
// symbol most significant. Rejected when |alphabet|^n > kEnumerationLimit.
Pmf iid_extension(const Pmf& p, std::size_t n);

// (1/n) * sum_t d(x_t, y_t)
double sequence_distortion(const DistortionMeasure& d, const SymbolSequence& x,
                           const SymbolSequence& y);

// sum_{x,y} j(x, y) * d(x, y)
double expected_distortion(const JointPmf& j, const DistortionMeasure& d);

// --- sequence-space indexing (shared by every exact enumeration) ---

// |alphabet|^n, rejecting results above kEnumerationLimit.
std::size_t sequence_space_size(std::size_t alphabet, std::size_t n);

// Row-major rank of a sequence: first symbol most significant.
std::size_t sequence_index(const SymbolSequence& s, std::size_t alphabet);

SymbolSequence index_to_sequence(std::size_t index, std::size_t alphabet,
                                 std::size_t n);

}  // namespace sclab
