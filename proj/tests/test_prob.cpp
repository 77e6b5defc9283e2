#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "property_suite.hpp"
#include "sclab/prob.hpp"
#include "sclab/rng.hpp"

using namespace sclab;
using namespace sclab::testing;

namespace {

double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

}  // namespace

TEST_CASE("pmf validation") {
  CHECK_THROWS_AS(Pmf({0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(Pmf({1.2, -0.2}), std::invalid_argument);
  CHECK_THROWS_AS(Pmf(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(Pmf({0.5, 0.5 + 3e-9}), std::invalid_argument);
  CHECK_NOTHROW(Pmf({0.5, 0.5 + 3e-10}));
  CHECK(Pmf::uniform(4)[2] == doctest::Approx(0.25));
  CHECK(Pmf::point_mass(3, 1)[1] == 1.0);
  CHECK_THROWS_AS(Channel({{0.5, 0.4}, {0.5, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(DistortionMeasure({{0.0, -1.0}}), std::invalid_argument);
  CHECK(DistortionMeasure({{0.0, 2.5}, {1.0, 0.0}}).d_max() == 2.5);
}

TEST_CASE("total variation basics") {
  Rng rng(101);
  for (int i = 0; i < 50; ++i) {
    Pmf p = random_pmf(rng, random_size(rng, 2, 8));
    CHECK(total_variation(p, p) == 0.0);
  }
  CHECK(total_variation(Pmf::point_mass(2, 0), Pmf::point_mass(2, 1)) == 1.0);
  // half-L1 oracle: (|0.5-0.75| + |0.5-0.25|) / 2
  CHECK(total_variation(Pmf::bernoulli(0.5), Pmf::bernoulli(0.25)) ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK_THROWS_AS(total_variation(Pmf::uniform(2), Pmf::uniform(3)),
                  std::invalid_argument);
}

TEST_CASE("entropy") {
  CHECK(entropy(Pmf::point_mass(5, 2)) == 0.0);
  CHECK(entropy(Pmf::uniform(4)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(entropy(Pmf::bernoulli(0.11)) ==
        doctest::Approx(binary_entropy(0.11)).epsilon(1e-12));
  CHECK(binary_entropy(0.11) == doctest::Approx(0.49992).epsilon(1e-4));
}

TEST_CASE("mutual information") {
  // product of independents
  Pmf a = Pmf({0.3, 0.7}), b = Pmf({0.2, 0.5, 0.3});
  std::vector<double> prod;
  for (double pa : a.probs())
    for (double pb : b.probs()) prod.push_back(pa * pb);
  CHECK(mutual_information(JointPmf({2, 3}, prod)) <= 1e-12);

  JointPmf equal({2, 2}, {0.5, 0.0, 0.0, 0.5});
  CHECK(mutual_information(equal) == doctest::Approx(1.0).epsilon(1e-12));

  JointPmf bsc = compose(Pmf::uniform(2), Channel::bsc(0.11));
  CHECK(mutual_information(bsc) ==
        doctest::Approx(1.0 - binary_entropy(0.11)).epsilon(1e-12));
  CHECK_THROWS_AS(mutual_information(JointPmf({2, 2, 2}, prod)),
                  std::invalid_argument);
}

TEST_CASE("conditional mutual information") {
  // axis1 independent of the rest
  {
    Rng rng(7);
    JointPmf base = random_joint(rng, {3, 2});
    Pmf mid = random_pmf(rng, 2);
    std::vector<double> table;
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 2; ++b)
        for (std::size_t c = 0; c < 2; ++c)
          table.push_back(base.at(a, c) * mid[b]);
    CHECK(conditional_mutual_information(JointPmf({3, 2, 2}, table)) ==
          doctest::Approx(0.0).epsilon(1e-12));
  }
  // conditioning on a constant reduces to plain mutual information
  {
    Rng rng(8);
    JointPmf base = random_joint(rng, {3, 4});
    std::vector<double> table;
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 4; ++b) {
        table.push_back(base.at(a, b));
        table.push_back(0.0);
      }
    CHECK(conditional_mutual_information(JointPmf({3, 4, 2}, table)) ==
          doctest::Approx(mutual_information(base)).epsilon(1e-12));
  }
  // chain V - X - B against a from-scratch triple-sum oracle
  {
    Channel vx = Channel::bsc(0.2), bx = Channel::bsc(0.1);
    std::vector<double> table;  // axes (X, V, B)
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t v = 0; v < 2; ++v)
        for (std::size_t b = 0; b < 2; ++b)
          table.push_back(0.5 * vx(v, x) * bx(b, x));
    JointPmf joint({2, 2, 2}, table);

    double oracle = 0.0;  // direct summation over all 8 cells
    double pb[2] = {0, 0}, pxb[4] = {0, 0, 0, 0}, pvb[4] = {0, 0, 0, 0};
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t v = 0; v < 2; ++v)
        for (std::size_t b = 0; b < 2; ++b) {
          double w = joint.at(x, v, b);
          pb[b] += w;
          pxb[x * 2 + b] += w;
          pvb[v * 2 + b] += w;
        }
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t v = 0; v < 2; ++v)
        for (std::size_t b = 0; b < 2; ++b) {
          double w = joint.at(x, v, b);
          if (w > 0) {
            oracle += w * std::log2(w * pb[b] / (pxb[x * 2 + b] * pvb[v * 2 + b]));
          }
        }
    CHECK(conditional_mutual_information(joint) ==
          doctest::Approx(oracle).epsilon(1e-12));
    CHECK(oracle > 0.0);
  }
}

TEST_CASE("compose and marginalize") {
  Channel bsc = Channel::bsc(0.1);
  JointPmf j = compose(Pmf::uniform(2), bsc);
  CHECK(j.at(0, 0) == doctest::Approx(0.45).epsilon(1e-15));
  CHECK(j.at(0, 1) == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(j.at(1, 0) == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(j.at(1, 1) == doctest::Approx(0.45).epsilon(1e-15));

  Rng point_rng(3);
  JointPmf point = compose(Pmf::point_mass(3, 1), random_channel(point_rng, 3, 2));
  for (std::size_t y = 0; y < 2; ++y) {
    CHECK(point.at(0, y) == 0.0);
    CHECK(point.at(2, y) == 0.0);
  }

  JointPmf diag = compose(Pmf({0.2, 0.8}), Channel::identity(2));
  CHECK(diag.at(0, 0) == doctest::Approx(0.2));
  CHECK(diag.at(1, 1) == doctest::Approx(0.8));
  CHECK(diag.at(0, 1) == 0.0);

  // marginalizing the channel output recovers the input pmf
  Rng rng(42);
  for (int i = 0; i < 200; ++i) {
    std::size_t k = random_size(rng, 2, 5), m = random_size(rng, 2, 5);
    Pmf p = random_pmf(rng, k);
    Pmf back = marginal(compose(p, random_channel(rng, k, m)), 0);
    for (std::size_t s = 0; s < k; ++s)
      CHECK(back[s] == doctest::Approx(p[s]).epsilon(1e-12));
  }
  // random joints cross-checked against an independent summation oracle
  for (int i = 0; i < 200; ++i) {
    JointPmf joint = random_joint(rng, {2, 3});
    Pmf m0 = marginal(joint, 0), m1 = marginal(joint, 1);
    for (std::size_t a = 0; a < 2; ++a) {
      double acc = 0.0;
      for (std::size_t b = 0; b < 3; ++b) acc += joint.at(a, b);
      CHECK(m0[a] == doctest::Approx(acc).epsilon(1e-14));
    }
    for (std::size_t b = 0; b < 3; ++b) {
      double acc = 0.0;
      for (std::size_t a = 0; a < 2; ++a) acc += joint.at(a, b);
      CHECK(m1[b] == doctest::Approx(acc).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(marginal(j, 2), std::invalid_argument);
  CHECK_THROWS_AS(compose(Pmf::uniform(3), bsc), std::invalid_argument);
}

TEST_CASE("condition_on and compose_channels") {
  JointPmf j = compose(Pmf({0.25, 0.75}), Channel::bsc(0.2));
  Channel back = condition_on(j, 0);
  CHECK(back(0, 0) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(back(1, 1) == doctest::Approx(0.8).epsilon(1e-12));
  Channel posterior = condition_on(j, 1);
  // Bayes: P(x=0 | y=0) = 0.25*0.8 / (0.25*0.8 + 0.75*0.2)
  CHECK(posterior(0, 0) == doctest::Approx(0.2 / 0.35).epsilon(1e-12));

  // zero-mass conditioning rows become uniform
  JointPmf z({2, 2}, {0.5, 0.0, 0.5, 0.0});
  Channel u = condition_on(z, 1);
  CHECK(u(0, 1) == doctest::Approx(0.5));

  // chained binary symmetric channels convolve their crossovers
  Channel chain = compose_channels(Channel::bsc(0.2), Channel::bsc(0.1));
  double crossover = 0.2 * 0.9 + 0.8 * 0.1;
  CHECK(chain(1, 0) == doctest::Approx(crossover).epsilon(1e-12));
  CHECK(chain(0, 1) == doctest::Approx(crossover).epsilon(1e-12));
}

TEST_CASE("iid extension") {
  Pmf p = Pmf::bernoulli(0.3);
  Pmf one = iid_extension(p, 1);
  CHECK(one.size() == 2);
  CHECK(one[1] == doctest::Approx(0.3).epsilon(1e-15));

  Pmf point = iid_extension(Pmf::point_mass(3, 2), 4);
  CHECK(point.size() == 81);
  CHECK(point[sequence_index({2, 2, 2, 2}, 3)] == 1.0);

  Pmf two = iid_extension(p, 2);  // direct product oracle, row-major
  CHECK(two[0] == doctest::Approx(0.49).epsilon(1e-15));
  CHECK(two[1] == doctest::Approx(0.21).epsilon(1e-15));
  CHECK(two[2] == doctest::Approx(0.21).epsilon(1e-15));
  CHECK(two[3] == doctest::Approx(0.09).epsilon(1e-15));

  // sums to 1 within n * 1e-9 and single-coordinate marginals equal p
  Rng rng(55);
  for (int i = 0; i < 20; ++i) {
    std::size_t k = random_size(rng, 2, 4);
    std::size_t n = random_size(rng, 1, 6);
    Pmf q = random_pmf(rng, k);
    Pmf ext = iid_extension(q, n);
    double sum = 0.0;
    for (std::size_t s = 0; s < ext.size(); ++s) sum += ext[s];
    CHECK(std::abs(sum - 1.0) <= static_cast<double>(n) * 1e-9);
    for (std::size_t t = 0; t < n; ++t) {
      std::vector<double> coord(k, 0.0);
      for (std::size_t s = 0; s < ext.size(); ++s)
        coord[index_to_sequence(s, k, n)[t]] += ext[s];
      for (std::size_t sym = 0; sym < k; ++sym)
        CHECK(coord[sym] == doctest::Approx(q[sym]).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(iid_extension(Pmf::uniform(2), 21), std::invalid_argument);
  CHECK_THROWS_AS(iid_extension(Pmf::uniform(1025), 2), std::invalid_argument);
}

TEST_CASE("sequence indexing round trip") {
  Rng rng(77);
  for (int i = 0; i < 500; ++i) {
    std::size_t k = random_size(rng, 2, 5);
    std::size_t n = random_size(rng, 1, 8);
    std::size_t total = 1;
    for (std::size_t t = 0; t < n; ++t) total *= k;
    std::size_t idx = rng.next_index(total);
    CHECK(sequence_index(index_to_sequence(idx, k, n), k) == idx);
  }
  // first symbol is most significant
  CHECK(sequence_index({1, 0, 0}, 2) == 4);
}

TEST_CASE("distortion operations") {
  DistortionMeasure hamming = DistortionMeasure::hamming(2);
  CHECK(sequence_distortion(hamming, {0, 1, 1, 0}, {0, 1, 1, 0}) == 0.0);
  CHECK(sequence_distortion(hamming, {0, 1, 1, 0}, {1, 0, 0, 1}) == 1.0);
  CHECK(sequence_distortion(hamming, {0, 1, 1, 0}, {0, 1, 0, 0}) == 0.25);
  CHECK_THROWS_AS(sequence_distortion(hamming, {0, 1}, {0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(sequence_distortion(hamming, {0, 2}, {0, 0}),
                  std::invalid_argument);

  JointPmf diag = compose(Pmf({0.4, 0.6}), Channel::identity(2));
  CHECK(expected_distortion(diag, hamming) == 0.0);
  JointPmf bsc = compose(Pmf::uniform(2), Channel::bsc(0.1));
  CHECK(expected_distortion(bsc, hamming) == doctest::Approx(0.1).epsilon(1e-12));
  DistortionMeasure constant({{0.7, 0.7}, {0.7, 0.7}});
  Rng rng(5);
  CHECK(expected_distortion(random_joint(rng, {2, 2}), constant) ==
        doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("distance properties on random instances") {
  CHECK(check_expectation_bound(1001, 300).violations == 0);
  CHECK(check_triangle(1002, 300).violations == 0);
  CHECK(check_channel_invariance(1003, 300, 1e-12).violations == 0);
  CHECK(check_marginal_contraction(1004, 300).violations == 0);
  CHECK(check_disagreement_bound(1005, 300).violations == 0);
}

TEST_CASE("information bounds on random joints") {
  Rng rng(2024);
  for (int i = 0; i < 300; ++i) {
    std::size_t a = random_size(rng, 2, 5), b = random_size(rng, 2, 5);
    JointPmf j = random_joint(rng, {a, b});
    double info = mutual_information(j);
    CHECK(info >= 0.0);
    CHECK(info <= entropy(marginal(j, 0)) + 1e-9);
    CHECK(info <= entropy(marginal(j, 1)) + 1e-9);
    CHECK(entropy(marginal(j, 0)) >= 0.0);
  }
  for (int i = 0; i < 100; ++i) {
    JointPmf j = random_joint(rng, {3, 3, 3});
    CHECK(conditional_mutual_information(j) >= 0.0);
  }
}
