#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>

#include "doctest.h"
#include "property_suite.hpp"
#include "sclab/coding.hpp"
#include "sclab/rng.hpp"

using namespace sclab;
using namespace sclab::testing;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Plain-arithmetic posterior: products of channel entries, then normalize.
// Independent of the log-domain path it checks.
std::vector<double> brute_posterior(const Codebook& cb, const Channel& ch,
                                    const SymbolSequence& x) {
  std::vector<double> lik(cb.num_codewords());
  double total = 0.0;
  for (std::size_t m = 0; m < cb.num_m(); ++m)
    for (std::size_t mp = 0; mp < cb.num_mprime(); ++mp) {
      double p = 1.0;
      for (std::size_t t = 0; t < cb.n(); ++t)
        p *= ch(x[t], cb.letter(m, mp, t));
      lik[m * cb.num_mprime() + mp] = p;
      total += p;
    }
  for (double& p : lik) p /= total;
  return lik;
}

Codebook two_word_fixture() {
  // n = 2, one codeword matching x = (0, 1) exactly, one matching nowhere
  return Codebook::from_table(Pmf::uniform(2), 2, 2, 1, {0, 1, 1, 0});
}

}  // namespace

TEST_CASE("codebook sizing") {
  Codebook lone = Codebook::generate(Pmf::uniform(2), 4, 0.0, 0.0, 1);
  CHECK(lone.num_codewords() == 1);
  CHECK(Codebook::index_count(4, 0.5) == 4);
  CHECK(Codebook::index_count(24, 0.75) == 262144);
  CHECK(Codebook::index_count(3, std::log2(3.0) / 3.0) == 3);
  CHECK(Codebook::index_count(24, 0.40032721) == 781);
  CHECK_THROWS_AS(Codebook::generate(Pmf::uniform(2), 8, 4.0, 0.0, 1),
                  std::invalid_argument);  // 2^32 codewords over budget
  CHECK_THROWS_AS(Codebook::index_count(4, -0.5), std::invalid_argument);
}

TEST_CASE("codebook generation determinism and keyed letters") {
  Pmf gen = Pmf::bernoulli(0.5);
  Codebook cb = Codebook::generate(gen, 4, 0.5, 0.25, 7);
  CHECK(cb.num_m() == 4);
  CHECK(cb.num_mprime() == 2);

  // any letter is recomputable without the table
  CHECK(cb.letter(1, 0, 2) == Codebook::derive_letter(gen, 7, 1, 0, 2));
  for (std::size_t m = 0; m < cb.num_m(); ++m)
    for (std::size_t mp = 0; mp < cb.num_mprime(); ++mp)
      for (std::size_t t = 0; t < cb.n(); ++t)
        CHECK(cb.letter(m, mp, t) == Codebook::derive_letter(gen, 7, m, mp, t));

  // regeneration reproduces the table bit-exactly
  Codebook again = Codebook::generate(gen, 4, 0.5, 0.25, 7);
  for (std::size_t m = 0; m < cb.num_m(); ++m)
    for (std::size_t mp = 0; mp < cb.num_mprime(); ++mp)
      CHECK(cb.codeword({m, mp}) == again.codeword({m, mp}));

  Codebook constant = Codebook::generate(Pmf::point_mass(3, 2), 5, 0.4, 0.0, 9);
  for (std::size_t m = 0; m < constant.num_m(); ++m)
    CHECK(constant.codeword({m, 0}) == SymbolSequence{2, 2, 2, 2, 2});

  CHECK_THROWS_AS(cb.codeword({4, 0}), std::invalid_argument);
  CHECK_THROWS_AS(cb.codeword({0, 2}), std::invalid_argument);
}

TEST_CASE("log likelihood") {
  Codebook cb = two_word_fixture();
  Channel identity = Channel::identity(2);
  CHECK(log_likelihood(cb, identity, {0, 1}, {0, 0}) == 0.0);
  CHECK(log_likelihood(cb, identity, {0, 1}, {1, 0}) == kNegInf);

  Channel bsc = Channel::bsc(0.1);
  CHECK(log_likelihood(cb, bsc, {0, 1}, {0, 0}) ==
        doctest::Approx(2.0 * std::log2(0.9)).epsilon(1e-12));
  CHECK(2.0 * std::log2(0.9) == doctest::Approx(-0.30401).epsilon(1e-4));
  CHECK_THROWS_AS(log_likelihood(cb, bsc, {0, 1, 0}, {0, 0}),
                  std::invalid_argument);
}

TEST_CASE("encoder posterior") {
  Codebook lone = Codebook::generate(Pmf::uniform(2), 3, 0.0, 0.0, 2);
  Pmf single = encoder_posterior(lone, Channel::bsc(0.3), {0, 1, 0});
  CHECK(single.size() == 1);
  CHECK(single[0] == 1.0);

  Codebook cb = two_word_fixture();
  Pmf ident = encoder_posterior(cb, Channel::identity(2), {0, 1});
  CHECK(ident[0] == 1.0);
  CHECK(ident[1] == 0.0);

  // likelihoods 0.81 and 0.01; hand-normalized oracle 0.81/0.82
  Pmf post = encoder_posterior(cb, Channel::bsc(0.1), {0, 1});
  CHECK(post[0] == doctest::Approx(0.81 / 0.82).epsilon(1e-12));
  CHECK(post[1] == doctest::Approx(0.01 / 0.82).epsilon(1e-12));
  CHECK(post[0] == doctest::Approx(0.9878).epsilon(1e-4));
  CHECK(post[1] == doctest::Approx(0.0122).epsilon(2e-3));

  CHECK_THROWS_AS(encoder_posterior(cb, Channel::identity(2), {0, 0}),
                  AllZeroLikelihood);
}

TEST_CASE("encoder posterior equals brute force on random instances") {
  Rng rng(321);
  for (int i = 0; i < 100; ++i) {
    std::size_t nv = random_size(rng, 2, 3);
    std::size_t nx = random_size(rng, 2, 3);
    std::size_t n = random_size(rng, 2, 6);
    double rate_r = 0.3 + 0.3 * rng.next_u01();
    Codebook cb = Codebook::generate(random_pmf(rng, nv), n, rate_r, 0.2,
                                     rng.next_u64());
    Channel ch = random_channel(rng, nv, nx);
    SymbolSequence x(n);
    for (auto& s : x) s = static_cast<Symbol>(rng.next_index(nx));
    Pmf post = encoder_posterior(cb, ch, x);
    std::vector<double> oracle = brute_posterior(cb, ch, x);
    double sum = 0.0;
    for (std::size_t w = 0; w < post.size(); ++w) {
      CHECK(std::abs(post[w] - oracle[w]) <= 1e-12);
      sum += post[w];
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("posterior is invariant under likelihood rescaling") {
  // proportionality: shifting every log-likelihood by a constant (scaling
  // all likelihoods) must not move the posterior
  Rng rng(99);
  for (int i = 0; i < 100; ++i) {
    std::size_t n = random_size(rng, 2, 5);
    Codebook cb =
        Codebook::generate(random_pmf(rng, 2), n, 0.5, 0.0, rng.next_u64());
    Channel ch = random_channel(rng, 2, 2);
    SymbolSequence x(n);
    for (auto& s : x) s = static_cast<Symbol>(rng.next_index(2));
    Pmf post = encoder_posterior(cb, ch, x);
    double shift = 40.0 * (rng.next_u01() - 0.5);
    std::vector<double> lik = log_likelihood_table(cb, ch, x);
    double total = 0.0;
    for (double& l : lik) {
      l = std::exp2(l + shift);
      total += l;
    }
    for (std::size_t w = 0; w < post.size(); ++w)
      CHECK(std::abs(lik[w] / total - post[w]) <= 1e-12);
  }
}

TEST_CASE("likelihood encode") {
  Codebook lone = Codebook::generate(Pmf::uniform(2), 3, 0.0, 0.0, 2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    MessagePair msg = likelihood_encode(lone, Channel::bsc(0.3), {1, 0, 1}, seed);
    CHECK(msg.m == 0);
    CHECK(msg.mprime == 0);
  }

  Codebook cb = two_word_fixture();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CHECK(likelihood_encode(cb, Channel::identity(2), {0, 1}, seed).m == 0);
  }

  // deterministic in the seed
  MessagePair a = likelihood_encode(cb, Channel::bsc(0.1), {0, 1}, 77);
  MessagePair b = likelihood_encode(cb, Channel::bsc(0.1), {0, 1}, 77);
  CHECK(a == b);

  // empirical frequency tracks the posterior (10^4 draws here; the
  // acceptance suite runs the full 10^5-draw chi-square)
  std::size_t hits = 0;
  const std::size_t draws = 10000;
  for (std::size_t i = 0; i < draws; ++i) {
    if (likelihood_encode(cb, Channel::bsc(0.1), {0, 1},
                          derive_seed(5150, "encode-freq", i)).m == 0) {
      ++hits;
    }
  }
  double freq = static_cast<double>(hits) / static_cast<double>(draws);
  CHECK(freq == doctest::Approx(0.81 / 0.82).epsilon(0.015));
}

TEST_CASE("ml channel decode") {
  // noiseless channel, distinct sub-codebook words: decoding is exact
  Codebook cb = Codebook::from_table(Pmf::uniform(2), 2, 1, 4,
                                     {0, 0, 0, 1, 1, 0, 1, 1});
  for (std::size_t want = 0; want < 4; ++want) {
    SymbolSequence b = cb.codeword({0, want});
    CHECK(ml_channel_decode(cb, 0, Channel::identity(2), b) == want);
  }

  Codebook lone = Codebook::generate(Pmf::uniform(2), 4, 0.5, 0.0, 3);
  CHECK(ml_channel_decode(lone, 1, Channel::bsc(0.2), {0, 1, 0, 1}) == 0);

  // ties break to the lowest index
  Codebook tied = Codebook::from_table(Pmf::uniform(2), 2, 1, 3,
                                       {1, 1, 0, 0, 1, 1});
  CHECK(ml_channel_decode(tied, 0, Channel::bsc(0.2), {1, 1}) == 0);

  // degenerate: every candidate impossible
  Codebook zero = Codebook::from_table(Pmf::uniform(2), 2, 1, 2, {0, 0, 0, 0});
  bool degenerate = false;
  CHECK(ml_channel_decode(zero, 0, Channel::identity(2), {1, 1}, &degenerate) == 0);
  CHECK(degenerate);

  // brute-force argmax oracle on random noisy instances
  Rng rng(888);
  for (int i = 0; i < 200; ++i) {
    Codebook rnd = Codebook::generate(random_pmf(rng, 2), 6, 0.0, 0.5,
                                      rng.next_u64());
    REQUIRE(rnd.num_mprime() == 8);
    Channel ch = Channel::bsc(0.1);
    SymbolSequence b(6);
    for (auto& s : b) s = static_cast<Symbol>(rng.next_index(2));
    double best = kNegInf;
    std::size_t best_mp = 0;
    for (std::size_t mp = 0; mp < 8; ++mp) {
      double acc = 0.0;
      for (std::size_t t = 0; t < 6; ++t)
        acc += std::log2(ch(b[t], rnd.letter(0, mp, t)));
      if (acc > best) {
        best = acc;
        best_mp = mp;
      }
    }
    CHECK(ml_channel_decode(rnd, 0, ch, b) == best_mp);
  }
}

TEST_CASE("reconstruct") {
  ReconstructionMap take_b = ReconstructionMap::second_argument(3, 2);
  ReconstructionMap take_v = ReconstructionMap::first_argument(3, 2);
  SymbolSequence v = {2, 0, 1, 2}, b = {1, 0, 1, 0};
  CHECK(reconstruct(take_b, v, b) == b);
  CHECK(reconstruct(take_v, v, b) == v);

  ReconstructionMap xorit(2, 2, 2, {0, 1, 1, 0});
  CHECK(reconstruct(xorit, {0, 1}, {0, 1}) == SymbolSequence{0, 0});
  CHECK(reconstruct(xorit, {0, 0, 1, 1}, {0, 1, 0, 1}) ==
        SymbolSequence{0, 1, 1, 0});
  CHECK_THROWS_AS(reconstruct(xorit, {0, 2}, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(reconstruct(xorit, {0}, {0, 0}), std::invalid_argument);
}

TEST_CASE("greedy reconstruction is cellwise optimal") {
  Rng rng(4242);
  for (int i = 0; i < 100; ++i) {
    JointPmf joint = random_joint(rng, {2, 3, 2});  // (X, V, B)
    DistortionMeasure d({{0.0, 1.0, 0.4}, {1.0, 0.0, 0.4}});
    ReconstructionMap greedy = greedy_reconstruction(joint, d);
    double got = reconstruction_distortion(joint, greedy, d);
    // exhaustive check over all 3^(3*2) maps
    std::size_t maps = 1;
    for (int c = 0; c < 6; ++c) maps *= 3;
    double best = 1e300;
    for (std::size_t code = 0; code < maps; ++code) {
      std::size_t rest = code;
      std::vector<Symbol> table(6);
      for (auto& y : table) {
        y = static_cast<Symbol>(rest % 3);
        rest /= 3;
      }
      ReconstructionMap candidate(3, 2, 3, table);
      best = std::min(best, reconstruction_distortion(joint, candidate, d));
    }
    CHECK(got == doctest::Approx(best).epsilon(1e-12));
  }
}
