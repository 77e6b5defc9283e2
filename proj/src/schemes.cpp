#include "sclab/schemes.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sclab/parallel.hpp"
#include "sclab/rng.hpp"

namespace sclab {

namespace {

void check_budget(std::size_t n, double rate_a, double rate_b,
                  std::size_t budget) {
  const std::size_t na = Codebook::index_count(n, rate_a);
  const std::size_t nb = Codebook::index_count(n, rate_b);
  if (na > budget / nb || na * nb > budget / n) {
    throw std::invalid_argument(
        "scheme config: codebook needs " + std::to_string(na) + " * " +
        std::to_string(nb) + " * " + std::to_string(n) +
        " symbols, over the budget of " + std::to_string(budget));
  }
}

SymbolSequence draw_iid(const Pmf& p, std::size_t n, Rng& rng) {
  SymbolSequence s(n);
  for (std::size_t t = 0; t < n; ++t)
    s[t] = static_cast<Symbol>(inverse_cdf(p.probs(), rng.next_u01()));
  return s;
}

// Draws an n-letter pair sequence from a 2-axis joint.
void draw_iid_pair(const JointPmf& j, std::size_t n, Rng& rng,
                   SymbolSequence& a, SymbolSequence& b) {
  a.resize(n);
  b.resize(n);
  const std::size_t nb = j.dim(1);
  for (std::size_t t = 0; t < n; ++t) {
    std::size_t cell = inverse_cdf(j.flat(), rng.next_u01());
    a[t] = static_cast<Symbol>(cell / nb);
    b[t] = static_cast<Symbol>(cell % nb);
  }
}

MessagePair encode_or_fallback(const Codebook& cb, const Channel& ch,
                               const SymbolSequence& x, Rng& rng,
                               bool* degenerate) {
  try {
    return likelihood_encode(cb, ch, x, rng);
  } catch (const AllZeroLikelihood&) {
    *degenerate = true;
    return {rng.next_index(cb.num_m()), rng.next_index(cb.num_mprime())};
  }
}

std::size_t block_of(std::size_t trial, std::size_t trials,
                     std::size_t blocks) {
  return trial * blocks / trials;
}

std::size_t clamp_blocks(std::size_t requested, std::size_t trials) {
  if (requested == 0) requested = 1;
  return std::min(requested, trials);
}

template <typename Scheme, typename MakeCodebooks, typename RunTrial>
ExperimentSummary run_generic(const Scheme& scheme, std::size_t trials,
                              std::size_t blocks_requested,
                              std::uint64_t master_seed, const char* tag,
                              unsigned threads, MakeCodebooks make_codebooks,
                              RunTrial run_trial) {
  ExperimentSummary summary;
  summary.warnings = scheme.warnings();
  const std::size_t blocks = clamp_blocks(blocks_requested, trials);
  summary.codebooks_used = blocks;
  auto codebooks = make_codebooks(blocks);

  summary.trials.resize(trials);
  parallel_for(trials, threads, [&](std::size_t i) {
    const std::size_t block = block_of(i, trials, blocks);
    summary.trials[i] =
        run_trial(codebooks[block], derive_seed(master_seed, tag, i));
  });

  const std::size_t metrics = summary.trials.front().distortions.size();
  summary.mean_distortions.assign(metrics, 0.0);
  summary.stderr_distortions.assign(metrics, 0.0);
  for (const auto& t : summary.trials)
    for (std::size_t k = 0; k < metrics; ++k)
      summary.mean_distortions[k] += t.distortions[k];
  for (double& m : summary.mean_distortions)
    m /= static_cast<double>(trials);
  if (trials > 1) {
    for (const auto& t : summary.trials)
      for (std::size_t k = 0; k < metrics; ++k) {
        double dev = t.distortions[k] - summary.mean_distortions[k];
        summary.stderr_distortions[k] += dev * dev;
      }
    for (double& s : summary.stderr_distortions)
      s = std::sqrt(s / static_cast<double>(trials - 1) /
                    static_cast<double>(trials));
  }
  std::size_t with_virtual = 0, virtual_errors = 0;
  for (const auto& t : summary.trials) {
    if (t.virtual_decode_ok.has_value()) {
      ++with_virtual;
      if (!*t.virtual_decode_ok) ++virtual_errors;
    }
    summary.encoder_degenerate_trials += t.encoder_degenerate;
    summary.decoder_degenerate_trials += t.decoder_degenerate;
  }
  if (with_virtual > 0) {
    summary.virtual_error_rate = static_cast<double>(virtual_errors) /
                                 static_cast<double>(with_virtual);
  }
  return summary;
}

}  // namespace

// ---------------------------------------------------------------------------
// Point to point.
// ---------------------------------------------------------------------------

P2PScheme::P2PScheme(P2PConfig cfg) : cfg_(std::move(cfg)), info_(0.0) {
  if (cfg_.n == 0 || cfg_.trials == 0) {
    throw std::invalid_argument("p2p config: n and trials must be >= 1");
  }
  if (cfg_.enc_channel.num_inputs() != cfg_.codeword_pmf.size() ||
      cfg_.enc_channel.num_outputs() != cfg_.source.size() ||
      cfg_.d.num_sources() != cfg_.source.size() ||
      cfg_.d.num_reproductions() != cfg_.codeword_pmf.size()) {
    throw std::invalid_argument("p2p config: inconsistent alphabets");
  }
  check_budget(cfg_.n, cfg_.rate, 0.0, cfg_.symbol_budget);
  info_ = mutual_information(compose(cfg_.codeword_pmf, cfg_.enc_channel));
}

Codebook P2PScheme::make_codebook(std::size_t block) const {
  return Codebook::generate(cfg_.codeword_pmf, cfg_.n, cfg_.rate, 0.0,
                            derive_seed(cfg_.master_seed, "codebook", 0, block),
                            cfg_.symbol_budget);
}

TrialResult P2PScheme::run_trial(const Codebook& cb,
                                 std::uint64_t trial_seed) const {
  Rng rng(trial_seed);
  TrialResult res;
  res.trial_seed = trial_seed;
  SymbolSequence x = draw_iid(cfg_.source, cfg_.n, rng);
  MessagePair msg = encode_or_fallback(cb, cfg_.enc_channel, x, rng,
                                       &res.encoder_degenerate);
  SymbolSequence y = cb.codeword({msg.m, 0});
  res.distortions = {sequence_distortion(cfg_.d, x, y)};
  return res;
}

std::vector<std::string> P2PScheme::warnings() const {
  std::vector<std::string> w;
  if (cfg_.rate <= info_) {
    w.push_back("rate " + std::to_string(cfg_.rate) +
                " does not exceed I(X;Y) = " + std::to_string(info_) +
                "; covering is not expected to hold");
  }
  return w;
}

// ---------------------------------------------------------------------------
// Side information.
// ---------------------------------------------------------------------------

WZScheme::WZScheme(WZConfig cfg)
    : cfg_(std::move(cfg)),
      codeword_pmf_(Pmf::uniform(1)),
      enc_channel_(Channel::identity(1)),
      dec_channel_(Channel::identity(1)),
      info_xv_(0.0),
      info_vb_(0.0) {
  if (cfg_.n == 0 || cfg_.trials == 0) {
    throw std::invalid_argument("wz config: n and trials must be >= 1");
  }
  const std::size_t nx = cfg_.joint_xb.dim(0), nb = cfg_.joint_xb.dim(1);
  const std::size_t nv = cfg_.test_channel.num_outputs();
  if (cfg_.test_channel.num_inputs() != nx || cfg_.phi.num_v() != nv ||
      cfg_.phi.num_b() != nb || cfg_.d.num_sources() != nx ||
      cfg_.d.num_reproductions() != cfg_.phi.num_outputs()) {
    throw std::invalid_argument("wz config: inconsistent alphabets");
  }
  check_budget(cfg_.n, cfg_.rate_r, cfg_.rate_rprime, cfg_.symbol_budget);

  // Everything the pipeline needs is derived from the natural-direction
  // objects: codeword marginal, posterior encoder channel, and the decoder
  // channel through the auxiliary-source-side chain.
  JointPmf joint_xv = compose(marginal(cfg_.joint_xb, 0), cfg_.test_channel);
  codeword_pmf_ = marginal(joint_xv, 1);
  enc_channel_ = condition_on(joint_xv, 1);                     // P(x | v)
  dec_channel_ = compose_channels(enc_channel_,                 // P(b | v)
                                  condition_on(cfg_.joint_xb, 0));
  info_xv_ = mutual_information(joint_xv);
  info_vb_ = mutual_information(compose(codeword_pmf_, dec_channel_));
}

Codebook WZScheme::make_codebook(std::size_t block) const {
  return Codebook::generate(codeword_pmf_, cfg_.n, cfg_.rate_r,
                            cfg_.rate_rprime,
                            derive_seed(cfg_.master_seed, "codebook", 0, block),
                            cfg_.symbol_budget);
}

TrialResult WZScheme::run_trial(const Codebook& cb,
                                std::uint64_t trial_seed) const {
  Rng rng(trial_seed);
  TrialResult res;
  res.trial_seed = trial_seed;
  SymbolSequence x, b;
  draw_iid_pair(cfg_.joint_xb, cfg_.n, rng, x, b);
  MessagePair msg =
      encode_or_fallback(cb, enc_channel_, x, rng, &res.encoder_degenerate);
  std::size_t mprime_hat = ml_channel_decode(cb, msg.m, dec_channel_, b,
                                             &res.decoder_degenerate);
  SymbolSequence v = cb.codeword({msg.m, mprime_hat});
  SymbolSequence y = reconstruct(cfg_.phi, v, b);
  res.distortions = {sequence_distortion(cfg_.d, x, y)};
  res.virtual_decode_ok = (mprime_hat == msg.mprime);
  return res;
}

std::vector<std::string> WZScheme::warnings() const {
  std::vector<std::string> w;
  if (cfg_.rate_r + cfg_.rate_rprime <= info_xv_) {
    w.push_back("R + R' = " + std::to_string(cfg_.rate_r + cfg_.rate_rprime) +
                " does not exceed I(X;V) = " + std::to_string(info_xv_) +
                "; covering is not expected to hold");
  }
  if (cfg_.rate_rprime >= info_vb_) {
    w.push_back("R' = " + std::to_string(cfg_.rate_rprime) +
                " is not below I(V;B) = " + std::to_string(info_vb_) +
                "; virtual decoding is not expected to succeed");
  }
  return w;
}

// ---------------------------------------------------------------------------
// Two encoders, corner operating point.
// ---------------------------------------------------------------------------

BTScheme::BTScheme(BTConfig cfg)
    : cfg_(std::move(cfg)),
      codeword_pmf_1_(Pmf::uniform(1)),
      codeword_pmf_2_(Pmf::uniform(1)),
      enc_channel_1_(Channel::identity(1)),
      enc_channel_2_(Channel::identity(1)),
      dec_channel_(Channel::identity(1)),
      info_x1u1_(0.0),
      info_x2u2_(0.0),
      info_u1u2_(0.0) {
  if (cfg_.n == 0 || cfg_.trials == 0) {
    throw std::invalid_argument("bt config: n and trials must be >= 1");
  }
  const std::size_t n1 = cfg_.joint_x1x2.dim(0), n2 = cfg_.joint_x1x2.dim(1);
  const std::size_t nu1 = cfg_.test_channel_1.num_outputs();
  const std::size_t nu2 = cfg_.test_channel_2.num_outputs();
  if (cfg_.test_channel_1.num_inputs() != n1 ||
      cfg_.test_channel_2.num_inputs() != n2 ||
      cfg_.phi1.num_v() != nu1 || cfg_.phi1.num_b() != nu2 ||
      cfg_.phi2.num_v() != nu1 || cfg_.phi2.num_b() != nu2 ||
      cfg_.d1.num_sources() != n1 || cfg_.d2.num_sources() != n2 ||
      cfg_.d1.num_reproductions() != cfg_.phi1.num_outputs() ||
      cfg_.d2.num_reproductions() != cfg_.phi2.num_outputs()) {
    throw std::invalid_argument("bt config: inconsistent alphabets");
  }
  check_budget(cfg_.n, cfg_.rate_1, 0.0, cfg_.symbol_budget);
  check_budget(cfg_.n, cfg_.rate_2, cfg_.rate_2prime, cfg_.symbol_budget);

  JointPmf joint_x1u1 =
      compose(marginal(cfg_.joint_x1x2, 0), cfg_.test_channel_1);
  JointPmf joint_x2u2 =
      compose(marginal(cfg_.joint_x1x2, 1), cfg_.test_channel_2);
  codeword_pmf_1_ = marginal(joint_x1u1, 1);
  codeword_pmf_2_ = marginal(joint_x2u2, 1);
  enc_channel_1_ = condition_on(joint_x1u1, 1);
  enc_channel_2_ = condition_on(joint_x2u2, 1);
  JointPmf joint_u1u2 =
      bt_joint_u1u2(cfg_.joint_x1x2, cfg_.test_channel_1, cfg_.test_channel_2);
  dec_channel_ = condition_on(joint_u1u2, 1);  // P(u1 | u2)
  info_x1u1_ = mutual_information(joint_x1u1);
  info_x2u2_ = mutual_information(joint_x2u2);
  info_u1u2_ = mutual_information(joint_u1u2);
}

Codebook BTScheme::make_codebook_1(std::size_t block) const {
  return Codebook::generate(codeword_pmf_1_, cfg_.n, cfg_.rate_1, 0.0,
                            derive_seed(cfg_.master_seed, "codebook", 1, block),
                            cfg_.symbol_budget);
}

Codebook BTScheme::make_codebook_2(std::size_t block) const {
  return Codebook::generate(codeword_pmf_2_, cfg_.n, cfg_.rate_2,
                            cfg_.rate_2prime,
                            derive_seed(cfg_.master_seed, "codebook", 2, block),
                            cfg_.symbol_budget);
}

TrialResult BTScheme::run_trial(const Codebook& cb1, const Codebook& cb2,
                                std::uint64_t trial_seed) const {
  Rng rng(trial_seed);
  TrialResult res;
  res.trial_seed = trial_seed;
  SymbolSequence x1, x2;
  draw_iid_pair(cfg_.joint_x1x2, cfg_.n, rng, x1, x2);
  MessagePair m1 =
      encode_or_fallback(cb1, enc_channel_1_, x1, rng, &res.encoder_degenerate);
  MessagePair m2 =
      encode_or_fallback(cb2, enc_channel_2_, x2, rng, &res.encoder_degenerate);
  SymbolSequence u1 = cb1.codeword({m1.m, 0});
  std::size_t m2prime_hat = ml_channel_decode(cb2, m2.m, dec_channel_, u1,
                                              &res.decoder_degenerate);
  SymbolSequence u2 = cb2.codeword({m2.m, m2prime_hat});
  res.distortions = {
      sequence_distortion(cfg_.d1, x1, reconstruct(cfg_.phi1, u1, u2)),
      sequence_distortion(cfg_.d2, x2, reconstruct(cfg_.phi2, u1, u2))};
  res.virtual_decode_ok = (m2prime_hat == m2.mprime);
  return res;
}

std::vector<std::string> BTScheme::warnings() const {
  std::vector<std::string> w;
  if (cfg_.rate_1 <= info_x1u1_) {
    w.push_back("R1 = " + std::to_string(cfg_.rate_1) +
                " does not exceed I(X1;U1) = " + std::to_string(info_x1u1_));
  }
  if (cfg_.rate_2 + cfg_.rate_2prime <= info_x2u2_) {
    w.push_back("R2 + R2' = " +
                std::to_string(cfg_.rate_2 + cfg_.rate_2prime) +
                " does not exceed I(X2;U2) = " + std::to_string(info_x2u2_));
  }
  if (cfg_.rate_2prime >= info_u1u2_) {
    w.push_back("R2' = " + std::to_string(cfg_.rate_2prime) +
                " is not below I(U1;U2) = " + std::to_string(info_u1u2_) +
                "; virtual decoding is not expected to succeed");
  }
  return w;
}

// ---------------------------------------------------------------------------
// Single-trial entry points and experiment drivers.
// ---------------------------------------------------------------------------

TrialResult run_p2p_trial(const P2PConfig& cfg, std::size_t trial_index) {
  P2PScheme scheme(cfg);
  const std::size_t blocks =
      clamp_blocks(cfg.codebooks_per_experiment, cfg.trials);
  Codebook cb =
      scheme.make_codebook(block_of(trial_index, cfg.trials, blocks));
  return scheme.run_trial(cb,
                          derive_seed(cfg.master_seed, "p2p-trial", trial_index));
}

TrialResult run_wz_trial(const WZConfig& cfg, std::size_t trial_index) {
  WZScheme scheme(cfg);
  const std::size_t blocks =
      clamp_blocks(cfg.codebooks_per_experiment, cfg.trials);
  Codebook cb =
      scheme.make_codebook(block_of(trial_index, cfg.trials, blocks));
  return scheme.run_trial(cb,
                          derive_seed(cfg.master_seed, "wz-trial", trial_index));
}

TrialResult run_bt_trial(const BTConfig& cfg, std::size_t trial_index) {
  BTScheme scheme(cfg);
  const std::size_t blocks =
      clamp_blocks(cfg.codebooks_per_experiment, cfg.trials);
  const std::size_t block = block_of(trial_index, cfg.trials, blocks);
  Codebook cb1 = scheme.make_codebook_1(block);
  Codebook cb2 = scheme.make_codebook_2(block);
  return scheme.run_trial(cb1, cb2,
                          derive_seed(cfg.master_seed, "bt-trial", trial_index));
}

ExperimentSummary run_experiment(const P2PConfig& cfg, unsigned threads) {
  P2PScheme scheme(cfg);
  return run_generic(
      scheme, cfg.trials, cfg.codebooks_per_experiment, cfg.master_seed,
      "p2p-trial", threads,
      [&](std::size_t blocks) {
        std::vector<Codebook> cbs;
        for (std::size_t b = 0; b < blocks; ++b)
          cbs.push_back(scheme.make_codebook(b));
        return cbs;
      },
      [&](const Codebook& cb, std::uint64_t seed) {
        return scheme.run_trial(cb, seed);
      });
}

ExperimentSummary run_experiment(const WZConfig& cfg, unsigned threads) {
  WZScheme scheme(cfg);
  return run_generic(
      scheme, cfg.trials, cfg.codebooks_per_experiment, cfg.master_seed,
      "wz-trial", threads,
      [&](std::size_t blocks) {
        std::vector<Codebook> cbs;
        for (std::size_t b = 0; b < blocks; ++b)
          cbs.push_back(scheme.make_codebook(b));
        return cbs;
      },
      [&](const Codebook& cb, std::uint64_t seed) {
        return scheme.run_trial(cb, seed);
      });
}

ExperimentSummary run_experiment(const BTConfig& cfg, unsigned threads) {
  BTScheme scheme(cfg);
  return run_generic(
      scheme, cfg.trials, cfg.codebooks_per_experiment, cfg.master_seed,
      "bt-trial", threads,
      [&](std::size_t blocks) {
        std::vector<std::pair<Codebook, Codebook>> cbs;
        for (std::size_t b = 0; b < blocks; ++b)
          cbs.emplace_back(scheme.make_codebook_1(b),
                           scheme.make_codebook_2(b));
        return cbs;
      },
      [&](const std::pair<Codebook, Codebook>& cbs, std::uint64_t seed) {
        return scheme.run_trial(cbs.first, cbs.second, seed);
      });
}

}  // namespace sclab
