#include "sclab/softcover.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sclab/coding.hpp"
#include "sclab/parallel.hpp"
#include "sclab/rng.hpp"

namespace sclab {

Pmf induced_sequence_dist(const Codebook& cb, const Channel& ch) {
  if (ch.num_inputs() != cb.generator().size()) {
    throw std::invalid_argument(
        "induced_sequence_dist: channel input != codeword alphabet");
  }
  if (cb.num_codewords() > kMaxEnumerableCodewords) {
    throw std::invalid_argument(
        "induced_sequence_dist: codebook too large for exact enumeration");
  }
  const std::size_t k = ch.num_outputs();
  const std::size_t total = sequence_space_size(k, cb.n());
  std::vector<double> probs(total, 0.0);
  const double w = 1.0 / static_cast<double>(cb.num_codewords());
  std::vector<double> acc, next;
  for (std::size_t m = 0; m < cb.num_m(); ++m)
    for (std::size_t mp = 0; mp < cb.num_mprime(); ++mp) {
      auto cw = cb.codeword_view({m, mp});
      acc.assign(1, 1.0);
      for (std::size_t t = 0; t < cb.n(); ++t) {
        next.assign(acc.size() * k, 0.0);
        for (std::size_t i = 0; i < acc.size(); ++i) {
          if (acc[i] == 0.0) continue;
          for (std::size_t o = 0; o < k; ++o)
            next[i * k + o] = acc[i] * ch(o, cw[t]);
        }
        acc.swap(next);
      }
      for (std::size_t i = 0; i < total; ++i) probs[i] += w * acc[i];
    }
  return Pmf::trusted(std::move(probs));
}

double tv_to_iid(const Codebook& cb, const Channel& ch, const Pmf& target) {
  return total_variation(induced_sequence_dist(cb, ch),
                         iid_extension(target, cb.n()));
}

JointPmf pair_output_joint(const JointPmf& joint_xb,
                           const Channel& test_channel) {
  if (joint_xb.arity() != 2 ||
      test_channel.num_inputs() != joint_xb.dim(0)) {
    throw std::invalid_argument("pair_output_joint: shape mismatch");
  }
  const std::size_t nx = joint_xb.dim(0), nb = joint_xb.dim(1),
                    nv = test_channel.num_outputs();
  std::vector<double> table(nx * nb * nv, 0.0);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t b = 0; b < nb; ++b)
      for (std::size_t v = 0; v < nv; ++v)
        table[(x * nb + b) * nv + v] = joint_xb.at(x, b) * test_channel(v, x);
  return JointPmf::trusted({nx * nb, nv}, std::move(table), {"xb", "v"});
}

SoftcoverReport softcover_sweep(const JointPmf& joint,
                                const std::vector<double>& rates,
                                const std::vector<std::size_t>& ns,
                                std::size_t codebooks_per_cell,
                                std::uint64_t seed, unsigned threads) {
  if (joint.arity() != 2) {
    throw std::invalid_argument("softcover_sweep: joint must be 2-axis");
  }
  if (rates.empty() || ns.empty() || codebooks_per_cell == 0) {
    throw std::invalid_argument("softcover_sweep: empty grid");
  }
  const Pmf target = marginal(joint, 0);
  const Pmf codeword_pmf = marginal(joint, 1);
  const Channel ch = condition_on(joint, 1);  // P(output | codeword)

  // Validate every cell up front so a sweep never dies halfway through.
  for (std::size_t n : ns) {
    sequence_space_size(target.size(), n);
    for (double rate : rates) {
      if (Codebook::index_count(n, rate) > kMaxEnumerableCodewords) {
        throw std::invalid_argument(
            "softcover_sweep: cell codebook too large for exact enumeration");
      }
    }
  }

  SoftcoverReport report;
  report.mutual_information_bits = mutual_information(joint);
  report.codebooks_per_cell = codebooks_per_cell;
  report.seed = seed;
  report.cells.resize(rates.size() * ns.size());

  parallel_for(report.cells.size(), threads, [&](std::size_t cell_index) {
    const std::size_t ri = cell_index / ns.size();
    const std::size_t ni = cell_index % ns.size();
    SoftcoverCell cell;
    cell.rate = rates[ri];
    cell.n = ns[ni];
    cell.num_codewords = Codebook::index_count(cell.n, cell.rate);
    double sum = 0.0;
    for (std::size_t c = 0; c < codebooks_per_cell; ++c) {
      Codebook cb = Codebook::generate(
          codeword_pmf, cell.n, cell.rate, 0.0,
          derive_seed(seed, "softcover-codebook", ri, ni, c));
      double tv = tv_to_iid(cb, ch, target);
      cell.tvs.push_back(tv);
      sum += tv;
    }
    cell.mean_tv = sum / static_cast<double>(codebooks_per_cell);
    report.cells[cell_index] = std::move(cell);
  });
  return report;
}

// ---------------------------------------------------------------------------
// Auxiliary-distribution identities.
// ---------------------------------------------------------------------------

namespace {

struct FixtureSpaces {
  std::size_t nx, nb, nv;
  std::size_t sx, sb, sv;  // sequence-space sizes
  std::size_t num_messages;
};

FixtureSpaces fixture_spaces(const QIdentityFixture& f) {
  FixtureSpaces s{};
  s.nv = f.pmf_v.size();
  s.nx = f.x_given_v.num_outputs();
  s.nb = f.b_given_x.num_outputs();
  if (f.x_given_v.num_inputs() != s.nv || f.b_given_x.num_inputs() != s.nx) {
    throw std::invalid_argument("q identities: channel chain shape mismatch");
  }
  if (f.n == 0 || f.n > 3 || f.num_m * f.num_mprime > 8) {
    throw std::invalid_argument(
        "q identities: fixture outside the enumerable regime (n <= 3, at "
        "most 8 codewords)");
  }
  s.sx = sequence_space_size(s.nx, f.n);
  s.sb = sequence_space_size(s.nb, f.n);
  s.sv = sequence_space_size(s.nv, f.n);
  s.num_messages = f.num_m * f.num_mprime;
  return s;
}

// max | Bayes inversion of the uniform-message auxiliary joint - encoder
// posterior |, checked for every x^n of positive probability.
double posterior_identity_error(const QIdentityFixture& f,
                                const FixtureSpaces& s, const Codebook& cb,
                                std::size_t* sequences_checked) {
  double worst = 0.0;
  std::size_t checked = 0;
  std::vector<double> joint_mx(s.num_messages);
  for (std::size_t xi = 0; xi < s.sx; ++xi) {
    SymbolSequence x = index_to_sequence(xi, s.nx, f.n);
    // joint mass of (m, m', x^n), summing the side sequence out by brute
    // enumeration -- this is the definitional route, no factorization tricks
    double total = 0.0;
    for (std::size_t m = 0; m < f.num_m; ++m)
      for (std::size_t mp = 0; mp < f.num_mprime; ++mp) {
        auto cw = cb.codeword_view({m, mp});
        double mass = 0.0;
        for (std::size_t bi = 0; bi < s.sb; ++bi) {
          SymbolSequence b = index_to_sequence(bi, s.nb, f.n);
          double p = 1.0 / static_cast<double>(s.num_messages);
          for (std::size_t t = 0; t < f.n; ++t)
            p *= f.x_given_v(x[t], cw[t]) * f.b_given_x(b[t], x[t]);
          mass += p;
        }
        joint_mx[m * f.num_mprime + mp] = mass;
        total += mass;
      }
    if (total <= 0.0) continue;
    ++checked;
    Pmf enc = encoder_posterior(cb, f.x_given_v, x);
    for (std::size_t w = 0; w < s.num_messages; ++w) {
      worst = std::max(worst, std::abs(joint_mx[w] / total - enc[w]));
    }
  }
  if (sequences_checked) *sequences_checked = checked;
  return worst;
}

// max | E over all codebooks of the auxiliary sequence joint - iid product |.
double ensemble_identity_error(const QIdentityFixture& f,
                               const FixtureSpaces& s,
                               std::size_t* ensembles_checked) {
  const std::size_t letters = f.n * s.num_messages;
  std::size_t ensembles = 1;
  for (std::size_t i = 0; i < letters; ++i) {
    if (ensembles > kMaxEnsembleSize / s.nv) {
      throw std::invalid_argument(
          "q identities: codebook ensemble exceeds the enumeration limit");
    }
    ensembles *= s.nv;
  }

  std::vector<double> averaged(s.sx * s.sb * s.sv, 0.0);
  std::vector<Symbol> table(letters, 0);
  const double msg_w = 1.0 / static_cast<double>(s.num_messages);
  for (std::size_t e = 0; e < ensembles; ++e) {
    double weight = 1.0;
    for (Symbol letter : table) weight *= f.pmf_v[letter];
    if (weight > 0.0) {
      Codebook cb = Codebook::from_table(f.pmf_v, f.n, f.num_m, f.num_mprime,
                                         table);
      for (std::size_t m = 0; m < f.num_m; ++m)
        for (std::size_t mp = 0; mp < f.num_mprime; ++mp) {
          auto cw = cb.codeword_view({m, mp});
          const std::size_t vi =
              sequence_index(SymbolSequence(cw.begin(), cw.end()), s.nv);
          for (std::size_t xi = 0; xi < s.sx; ++xi) {
            SymbolSequence x = index_to_sequence(xi, s.nx, f.n);
            double px = msg_w * weight;
            for (std::size_t t = 0; t < f.n; ++t)
              px *= f.x_given_v(x[t], cw[t]);
            if (px == 0.0) continue;
            for (std::size_t bi = 0; bi < s.sb; ++bi) {
              SymbolSequence b = index_to_sequence(bi, s.nb, f.n);
              double p = px;
              for (std::size_t t = 0; t < f.n; ++t)
                p *= f.b_given_x(b[t], x[t]);
              averaged[(xi * s.sb + bi) * s.sv + vi] += p;
            }
          }
        }
    }
    // increment the base-|V| letter counter
    for (std::size_t i = letters; i-- > 0;) {
      if (++table[i] < s.nv) break;
      table[i] = 0;
    }
  }

  double worst = 0.0;
  for (std::size_t xi = 0; xi < s.sx; ++xi) {
    SymbolSequence x = index_to_sequence(xi, s.nx, f.n);
    for (std::size_t bi = 0; bi < s.sb; ++bi) {
      SymbolSequence b = index_to_sequence(bi, s.nb, f.n);
      for (std::size_t vi = 0; vi < s.sv; ++vi) {
        SymbolSequence v = index_to_sequence(vi, s.nv, f.n);
        double iid = 1.0;
        for (std::size_t t = 0; t < f.n; ++t)
          iid *= f.pmf_v[v[t]] * f.x_given_v(x[t], v[t]) *
                 f.b_given_x(b[t], x[t]);
        worst = std::max(
            worst, std::abs(averaged[(xi * s.sb + bi) * s.sv + vi] - iid));
      }
    }
  }
  if (ensembles_checked) *ensembles_checked = ensembles;
  return worst;
}

}  // namespace

QIdentityReport verify_q_identities(const QIdentityFixture& fixture) {
  const FixtureSpaces s = fixture_spaces(fixture);
  QIdentityReport report;
  report.name = fixture.name;
  Codebook cb = Codebook::generate(fixture.pmf_v, fixture.n,
                                   std::log2(double(fixture.num_m)) /
                                       static_cast<double>(fixture.n),
                                   std::log2(double(fixture.num_mprime)) /
                                       static_cast<double>(fixture.n),
                                   fixture.seed);
  report.posterior_max_error =
      posterior_identity_error(fixture, s, cb, &report.sequences_checked);
  if (fixture.ensemble_check) {
    report.ensemble_checked = true;
    report.ensemble_max_error =
        ensemble_identity_error(fixture, s, &report.ensembles_checked);
  }
  return report;
}

std::vector<QIdentityFixture> builtin_q_fixtures() {
  std::vector<QIdentityFixture> fixtures;
  fixtures.push_back({"point-mass-generator", Pmf::point_mass(2, 0),
                      Channel::bsc(0.3), Channel::bsc(0.1), 2, 2, 1, 11,
                      true});
  fixtures.push_back({"binary-n1", Pmf::uniform(2), Channel::bsc(0.25),
                      Channel::bsc(0.1), 1, 2, 1, 7, true});
  fixtures.push_back({"binary-n2-ensemble", Pmf::uniform(2), Channel::bsc(0.2),
                      Channel::bsc(0.1), 2, 2, 1, 3, true});
  fixtures.push_back({"virtual-message-n3", Pmf(std::vector<double>{0.6, 0.4}),
                      Channel::bsc(0.15), Channel::bsc(0.1), 3, 2, 2, 19,
                      true});
  return fixtures;
}

}  // namespace sclab
