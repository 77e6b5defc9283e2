#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sclab/codebook.hpp"
#include "sclab/coding.hpp"
#include "sclab/rd.hpp"

namespace sclab {

struct TrialResult {
  std::vector<double> distortions;  // one per source
  std::optional<bool> virtual_decode_ok;
  bool encoder_degenerate = false;
  bool decoder_degenerate = false;
  std::uint64_t trial_seed = 0;
};

struct P2PConfig {
  Pmf source;
  Channel enc_channel;  // P(x | y), y the codeword symbol
  Pmf codeword_pmf;     // generator of the random codebook
  DistortionMeasure d;
  std::size_t n = 1;
  double rate = 0.0;
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  std::size_t codebooks_per_experiment = 10;
  std::size_t symbol_budget = kDefaultSymbolBudget;
};

struct WZConfig {
  JointPmf joint_xb;
  Channel test_channel;  // P(v | x); everything else is derived from it
  ReconstructionMap phi;
  DistortionMeasure d;
  std::size_t n = 1;
  double rate_r = 0.0;
  double rate_rprime = 0.0;
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  std::size_t codebooks_per_experiment = 10;
  std::size_t symbol_budget = kDefaultSymbolBudget;
};

struct BTConfig {
  JointPmf joint_x1x2;
  Channel test_channel_1;  // P(u1 | x1)
  Channel test_channel_2;  // P(u2 | x2)
  ReconstructionMap phi1;  // y1 = phi1(u1, u2)
  ReconstructionMap phi2;  // y2 = phi2(u1, u2)
  DistortionMeasure d1;
  DistortionMeasure d2;
  std::size_t n = 1;
  double rate_1 = 0.0;
  double rate_2 = 0.0;
  double rate_2prime = 0.0;
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  std::size_t codebooks_per_experiment = 10;
  std::size_t symbol_budget = kDefaultSymbolBudget;
};

/// Point-to-point pipeline: stochastic encoder against a random codebook,
/// decoder is a plain codeword lookup.
class P2PScheme {
 public:
  explicit P2PScheme(P2PConfig cfg);

  const P2PConfig& config() const { return cfg_; }
  Codebook make_codebook(std::size_t block) const;
  TrialResult run_trial(const Codebook& cb, std::uint64_t trial_seed) const;

  double info_bits() const { return info_; }  // I(X;Y) of the fixture
  std::vector<std::string> warnings() const;

 private:
  P2PConfig cfg_;
  double info_;
};

/// Side-information pipeline: the encoder emits a transmitted and a virtual
/// index; the decoder recovers the virtual index from the side sequence by
/// maximum-likelihood over the sub-codebook, then reconstructs symbolwise.
class WZScheme {
 public:
  explicit WZScheme(WZConfig cfg);

  const WZConfig& config() const { return cfg_; }
  Codebook make_codebook(std::size_t block) const;
  TrialResult run_trial(const Codebook& cb, std::uint64_t trial_seed) const;

  const Pmf& codeword_pmf() const { return codeword_pmf_; }
  const Channel& encoder_channel() const { return enc_channel_; }  // P(x | v)
  const Channel& decoder_channel() const { return dec_channel_; }  // P(b | v)
  double info_xv() const { return info_xv_; }
  double info_vb() const { return info_vb_; }
  std::vector<std::string> warnings() const;

 private:
  WZConfig cfg_;
  Pmf codeword_pmf_;
  Channel enc_channel_;
  Channel dec_channel_;
  double info_xv_;
  double info_vb_;
};

/// Two-encoder corner pipeline: encoder 1's codeword is decoded first by
/// lookup and acts as side information for decoding encoder 2's virtual index.
class BTScheme {
 public:
  explicit BTScheme(BTConfig cfg);

  const BTConfig& config() const { return cfg_; }
  Codebook make_codebook_1(std::size_t block) const;
  Codebook make_codebook_2(std::size_t block) const;
  TrialResult run_trial(const Codebook& cb1, const Codebook& cb2,
                        std::uint64_t trial_seed) const;

  const Channel& decoder_channel() const { return dec_channel_; }  // P(u1 | u2)
  double info_x1u1() const { return info_x1u1_; }
  double info_x2u2() const { return info_x2u2_; }
  double info_u1u2() const { return info_u1u2_; }
  std::vector<std::string> warnings() const;

 private:
  BTConfig cfg_;
  Pmf codeword_pmf_1_;
  Pmf codeword_pmf_2_;
  Channel enc_channel_1_;  // P(x1 | u1)
  Channel enc_channel_2_;  // P(x2 | u2)
  Channel dec_channel_;    // P(u1 | u2)
  double info_x1u1_;
  double info_x2u2_;
  double info_u1u2_;
};

// Single-trial entry points; trial `i` uses seed derive(master_seed, tag, i)
// and the codebook of its block.
TrialResult run_p2p_trial(const P2PConfig& cfg, std::size_t trial_index);
TrialResult run_wz_trial(const WZConfig& cfg, std::size_t trial_index);
TrialResult run_bt_trial(const BTConfig& cfg, std::size_t trial_index);

struct ExperimentSummary {
  std::vector<TrialResult> trials;
  std::vector<double> mean_distortions;
  std::vector<double> stderr_distortions;
  std::optional<double> virtual_error_rate;
  std::size_t codebooks_used = 0;
  std::size_t encoder_degenerate_trials = 0;
  std::size_t decoder_degenerate_trials = 0;
  std::vector<std::string> warnings;
};

// Runs all configured trials; trials are split over `threads` but results are
// identical for any thread count. Codebooks are regenerated per trial block
// (codebooks_per_experiment blocks) to approximate codebook-averaged
// expectations.
ExperimentSummary run_experiment(const P2PConfig& cfg, unsigned threads = 1);
ExperimentSummary run_experiment(const WZConfig& cfg, unsigned threads = 1);
ExperimentSummary run_experiment(const BTConfig& cfg, unsigned threads = 1);

}  // namespace sclab
