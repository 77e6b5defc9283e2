#include "sclab/prob.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sclab {

namespace {

// Kahan-compensated sum; keeps validation honest on 2^20-entry tables.
double stable_sum(const std::vector<double>& v) {
  double sum = 0.0, comp = 0.0;
  for (double x : v) {
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

void check_simplex(const std::vector<double>& probs, double tol,
                   const char* what) {
  if (probs.empty()) {
    throw std::invalid_argument(std::string(what) + ": empty alphabet");
  }
  for (double p : probs) {
    if (!(p >= 0.0)) {  // also rejects NaN
      throw std::invalid_argument(std::string(what) +
                                  ": negative or non-finite entry");
    }
  }
  double sum = stable_sum(probs);
  if (std::abs(sum - 1.0) > tol) {
    throw std::invalid_argument(std::string(what) + ": entries sum to " +
                                std::to_string(sum) + ", not 1");
  }
}

double half_l1(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
  return 0.5 * acc;
}

}  // namespace

// --- Pmf ---

Pmf::Pmf(std::vector<double> probs) : probs_(std::move(probs)) {
  check_simplex(probs_, 1e-9, "Pmf");
}

Pmf::Pmf(std::vector<double> probs, TrustedTag) : probs_(std::move(probs)) {
  check_simplex(probs_, 1e-6, "Pmf (internal)");
}

Pmf Pmf::trusted(std::vector<double> probs) {
  return Pmf(std::move(probs), TrustedTag{});
}

Pmf Pmf::uniform(std::size_t size) {
  if (size == 0) throw std::invalid_argument("Pmf::uniform: size 0");
  return trusted(std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

Pmf Pmf::point_mass(std::size_t size, std::size_t at) {
  if (at >= size) throw std::invalid_argument("Pmf::point_mass: index out of range");
  std::vector<double> p(size, 0.0);
  p[at] = 1.0;
  return trusted(std::move(p));
}

Pmf Pmf::bernoulli(double p_one) {
  if (!(p_one >= 0.0 && p_one <= 1.0)) {
    throw std::invalid_argument("Pmf::bernoulli: parameter outside [0,1]");
  }
  return trusted({1.0 - p_one, p_one});
}

// --- JointPmf ---

JointPmf::JointPmf(std::vector<std::size_t> dims, std::vector<double> probs,
                   std::vector<std::string> axes)
    : dims_(std::move(dims)), probs_(std::move(probs)), axes_(std::move(axes)) {
  check_shape();
  check_simplex(probs_, 1e-9, "JointPmf");
}

JointPmf::JointPmf(std::vector<std::size_t> dims, std::vector<double> probs,
                   std::vector<std::string> axes, TrustedTag)
    : dims_(std::move(dims)), probs_(std::move(probs)), axes_(std::move(axes)) {
  check_shape();
  check_simplex(probs_, 1e-6, "JointPmf (internal)");
}

JointPmf JointPmf::trusted(std::vector<std::size_t> dims,
                           std::vector<double> probs,
                           std::vector<std::string> axes) {
  return JointPmf(std::move(dims), std::move(probs), std::move(axes),
                  TrustedTag{});
}

void JointPmf::check_shape() {
  if (dims_.size() < 2 || dims_.size() > 3) {
    throw std::invalid_argument("JointPmf: arity must be 2 or 3");
  }
  std::size_t total = 1;
  for (std::size_t d : dims_) {
    if (d == 0) throw std::invalid_argument("JointPmf: zero-size axis");
    total *= d;
  }
  if (probs_.size() != total) {
    throw std::invalid_argument("JointPmf: table size does not match dims");
  }
  if (axes_.empty()) {
    const char* names[] = {"a0", "a1", "a2"};
    for (std::size_t a = 0; a < dims_.size(); ++a) axes_.emplace_back(names[a]);
  } else if (axes_.size() != dims_.size()) {
    throw std::invalid_argument("JointPmf: axis label count does not match");
  }
}

std::size_t JointPmf::dim(std::size_t axis) const {
  if (axis >= dims_.size()) throw std::invalid_argument("JointPmf: bad axis");
  return dims_[axis];
}

double JointPmf::at(std::size_t i, std::size_t j) const {
  if (arity() != 2) throw std::invalid_argument("JointPmf::at: arity != 2");
  return probs_[i * dims_[1] + j];
}

double JointPmf::at(std::size_t i, std::size_t j, std::size_t k) const {
  if (arity() != 3) throw std::invalid_argument("JointPmf::at: arity != 3");
  return probs_[(i * dims_[1] + j) * dims_[2] + k];
}

// --- Channel ---

Channel::Channel(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw std::invalid_argument("Channel: no rows");
  num_in_ = rows.size();
  num_out_ = rows.front().size();
  probs_.reserve(num_in_ * num_out_);
  for (const auto& r : rows) {
    if (r.size() != num_out_) {
      throw std::invalid_argument("Channel: ragged rows");
    }
    check_simplex(r, 1e-9, "Channel row");
    probs_.insert(probs_.end(), r.begin(), r.end());
  }
}

Channel Channel::trusted(const std::vector<std::vector<double>>& rows) {
  Channel ch;
  if (rows.empty()) throw std::invalid_argument("Channel: no rows");
  ch.num_in_ = rows.size();
  ch.num_out_ = rows.front().size();
  ch.probs_.reserve(ch.num_in_ * ch.num_out_);
  for (const auto& r : rows) {
    if (r.size() != ch.num_out_) {
      throw std::invalid_argument("Channel: ragged rows");
    }
    check_simplex(r, 1e-6, "Channel row (internal)");
    ch.probs_.insert(ch.probs_.end(), r.begin(), r.end());
  }
  return ch;
}

Channel Channel::bsc(double crossover) {
  if (!(crossover >= 0.0 && crossover <= 1.0)) {
    throw std::invalid_argument("Channel::bsc: crossover outside [0,1]");
  }
  return trusted({{1.0 - crossover, crossover}, {crossover, 1.0 - crossover}});
}

Channel Channel::identity(std::size_t size) {
  std::vector<std::vector<double>> rows(size, std::vector<double>(size, 0.0));
  for (std::size_t i = 0; i < size; ++i) rows[i][i] = 1.0;
  return trusted(rows);
}

std::vector<double> Channel::row(std::size_t input) const {
  if (input >= num_in_) throw std::invalid_argument("Channel::row: bad input");
  return std::vector<double>(probs_.begin() + input * num_out_,
                             probs_.begin() + (input + 1) * num_out_);
}

// --- DistortionMeasure ---

DistortionMeasure::DistortionMeasure(
    const std::vector<std::vector<double>>& table) {
  if (table.empty() || table.front().empty()) {
    throw std::invalid_argument("DistortionMeasure: empty table");
  }
  num_x_ = table.size();
  num_y_ = table.front().size();
  table_.reserve(num_x_ * num_y_);
  for (const auto& r : table) {
    if (r.size() != num_y_) {
      throw std::invalid_argument("DistortionMeasure: ragged rows");
    }
    for (double v : r) {
      if (!(v >= 0.0)) {
        throw std::invalid_argument("DistortionMeasure: negative entry");
      }
      table_.push_back(v);
    }
  }
  d_max_ = *std::max_element(table_.begin(), table_.end());
}

DistortionMeasure DistortionMeasure::hamming(std::size_t size) {
  std::vector<std::vector<double>> t(size, std::vector<double>(size, 1.0));
  for (std::size_t i = 0; i < size; ++i) t[i][i] = 0.0;
  return DistortionMeasure(t);
}

// --- information measures ---

double total_variation(const Pmf& p, const Pmf& q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("total_variation: alphabet mismatch");
  }
  return half_l1(p.probs(), q.probs());
}

double total_variation(const JointPmf& p, const JointPmf& q) {
  if (p.dims() != q.dims()) {
    throw std::invalid_argument("total_variation: shape mismatch");
  }
  return half_l1(p.flat(), q.flat());
}

double entropy(const Pmf& p) {
  double h = 0.0;
  for (double v : p.probs()) {
    if (v > 0.0) h -= v * std::log2(v);
  }
  return h;
}

double mutual_information(const JointPmf& j) {
  if (j.arity() != 2) {
    throw std::invalid_argument("mutual_information: arity must be 2");
  }
  const std::size_t na = j.dim(0), nb = j.dim(1);
  std::vector<double> pa(na, 0.0), pb(nb, 0.0);
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < nb; ++b) {
      double v = j.at(a, b);
      pa[a] += v;
      pb[b] += v;
    }
  double info = 0.0;
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < nb; ++b) {
      double v = j.at(a, b);
      if (v > 0.0) info += v * std::log2(v / (pa[a] * pb[b]));
    }
  return std::max(0.0, info);
}

double conditional_mutual_information(const JointPmf& j) {
  if (j.arity() != 3) {
    throw std::invalid_argument(
        "conditional_mutual_information: arity must be 3");
  }
  const std::size_t na = j.dim(0), nb = j.dim(1), nc = j.dim(2);
  std::vector<double> pc(nc, 0.0), pac(na * nc, 0.0), pbc(nb * nc, 0.0);
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < nb; ++b)
      for (std::size_t c = 0; c < nc; ++c) {
        double v = j.at(a, b, c);
        pc[c] += v;
        pac[a * nc + c] += v;
        pbc[b * nc + c] += v;
      }
  double info = 0.0;
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < nb; ++b)
      for (std::size_t c = 0; c < nc; ++c) {
        double v = j.at(a, b, c);
        if (v > 0.0) {
          info += v * std::log2(v * pc[c] / (pac[a * nc + c] * pbc[b * nc + c]));
        }
      }
  return std::max(0.0, info);
}

// --- structural operations ---

JointPmf compose(const Pmf& p, const Channel& ch) {
  if (p.size() != ch.num_inputs()) {
    throw std::invalid_argument("compose: pmf/channel alphabet mismatch");
  }
  std::vector<double> table(p.size() * ch.num_outputs());
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = 0; y < ch.num_outputs(); ++y)
      table[x * ch.num_outputs() + y] = p[x] * ch(y, x);
  return JointPmf::trusted({p.size(), ch.num_outputs()}, std::move(table),
                           {"in", "out"});
}

Pmf marginal(const JointPmf& j, std::size_t axis) {
  if (axis >= j.arity()) throw std::invalid_argument("marginal: bad axis");
  std::vector<double> out(j.dim(axis), 0.0);
  const auto& dims = j.dims();
  std::vector<std::size_t> idx(dims.size(), 0);
  const auto& flat = j.flat();
  for (std::size_t f = 0; f < flat.size(); ++f) {
    out[idx[axis]] += flat[f];
    for (std::size_t a = dims.size(); a-- > 0;) {
      if (++idx[a] < dims[a]) break;
      idx[a] = 0;
    }
  }
  return Pmf::trusted(std::move(out));
}

JointPmf sum_out(const JointPmf& j, std::size_t axis) {
  if (j.arity() != 3) throw std::invalid_argument("sum_out: arity must be 3");
  if (axis >= 3) throw std::invalid_argument("sum_out: bad axis");
  std::vector<std::size_t> keep;
  for (std::size_t a = 0; a < 3; ++a)
    if (a != axis) keep.push_back(a);
  const std::size_t d0 = j.dim(keep[0]), d1 = j.dim(keep[1]);
  std::vector<double> table(d0 * d1, 0.0);
  std::size_t idx[3];
  for (idx[0] = 0; idx[0] < j.dim(0); ++idx[0])
    for (idx[1] = 0; idx[1] < j.dim(1); ++idx[1])
      for (idx[2] = 0; idx[2] < j.dim(2); ++idx[2])
        table[idx[keep[0]] * d1 + idx[keep[1]]] +=
            j.at(idx[0], idx[1], idx[2]);
  return JointPmf::trusted({d0, d1}, std::move(table),
                           {j.axes()[keep[0]], j.axes()[keep[1]]});
}

Channel condition_on(const JointPmf& j, std::size_t given_axis) {
  if (j.arity() != 2) {
    throw std::invalid_argument("condition_on: arity must be 2");
  }
  if (given_axis >= 2) throw std::invalid_argument("condition_on: bad axis");
  const std::size_t other = 1 - given_axis;
  const std::size_t ng = j.dim(given_axis), no = j.dim(other);
  std::vector<std::vector<double>> rows(ng, std::vector<double>(no, 0.0));
  for (std::size_t g = 0; g < ng; ++g) {
    double mass = 0.0;
    for (std::size_t o = 0; o < no; ++o) {
      double v = given_axis == 0 ? j.at(g, o) : j.at(o, g);
      rows[g][o] = v;
      mass += v;
    }
    if (mass > 0.0) {
      for (double& v : rows[g]) v /= mass;
    } else {
      for (double& v : rows[g]) v = 1.0 / static_cast<double>(no);
    }
  }
  return Channel::trusted(rows);
}

Channel compose_channels(const Channel& first, const Channel& second) {
  if (first.num_outputs() != second.num_inputs()) {
    throw std::invalid_argument("compose_channels: alphabet mismatch");
  }
  std::vector<std::vector<double>> rows(
      first.num_inputs(), std::vector<double>(second.num_outputs(), 0.0));
  for (std::size_t x = 0; x < first.num_inputs(); ++x)
    for (std::size_t y = 0; y < first.num_outputs(); ++y) {
      double fy = first(y, x);
      if (fy == 0.0) continue;
      for (std::size_t z = 0; z < second.num_outputs(); ++z)
        rows[x][z] += fy * second(z, y);
    }
  return Channel::trusted(rows);
}

std::size_t sequence_space_size(std::size_t alphabet, std::size_t n) {
  if (n == 0) throw std::invalid_argument("sequence space: n must be >= 1");
  std::size_t total = 1;
  for (std::size_t t = 0; t < n; ++t) {
    if (total > kEnumerationLimit / alphabet) {
      throw std::invalid_argument(
          "sequence space: |alphabet|^n exceeds the enumeration limit");
    }
    total *= alphabet;
  }
  if (total > kEnumerationLimit) {
    throw std::invalid_argument(
        "sequence space: |alphabet|^n exceeds the enumeration limit");
  }
  return total;
}

std::size_t sequence_index(const SymbolSequence& s, std::size_t alphabet) {
  std::size_t idx = 0;
  for (Symbol sym : s) {
    if (sym >= alphabet) {
      throw std::invalid_argument("sequence_index: symbol out of range");
    }
    idx = idx * alphabet + sym;
  }
  return idx;
}

SymbolSequence index_to_sequence(std::size_t index, std::size_t alphabet,
                                 std::size_t n) {
  SymbolSequence s(n, 0);
  for (std::size_t t = n; t-- > 0;) {
    s[t] = static_cast<Symbol>(index % alphabet);
    index /= alphabet;
  }
  return s;
}

Pmf iid_extension(const Pmf& p, std::size_t n) {
  const std::size_t k = p.size();
  const std::size_t total = sequence_space_size(k, n);
  std::vector<double> out{1.0};
  out.reserve(total);
  for (std::size_t t = 0; t < n; ++t) {
    std::vector<double> next(out.size() * k);
    for (std::size_t i = 0; i < out.size(); ++i)
      for (std::size_t s = 0; s < k; ++s) next[i * k + s] = out[i] * p[s];
    out = std::move(next);
  }
  return Pmf::trusted(std::move(out));
}

double sequence_distortion(const DistortionMeasure& d, const SymbolSequence& x,
                           const SymbolSequence& y) {
  if (x.empty() || x.size() != y.size()) {
    throw std::invalid_argument("sequence_distortion: length mismatch");
  }
  double acc = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    if (x[t] >= d.num_sources() || y[t] >= d.num_reproductions()) {
      throw std::invalid_argument("sequence_distortion: symbol out of range");
    }
    acc += d(x[t], y[t]);
  }
  return acc / static_cast<double>(x.size());
}

double expected_distortion(const JointPmf& j, const DistortionMeasure& d) {
  if (j.arity() != 2 || j.dim(0) != d.num_sources() ||
      j.dim(1) != d.num_reproductions()) {
    throw std::invalid_argument("expected_distortion: shape mismatch");
  }
  double acc = 0.0;
  for (std::size_t x = 0; x < j.dim(0); ++x)
    for (std::size_t y = 0; y < j.dim(1); ++y) acc += j.at(x, y) * d(x, y);
  return acc;
}

}  // namespace sclab
