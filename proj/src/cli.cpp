#include "sclab/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "sclab/config.hpp"
#include "sclab/csv.hpp"
#include "sclab/parallel.hpp"
#include "sclab/rd.hpp"
#include "sclab/rng.hpp"
#include "sclab/schemes.hpp"
#include "sclab/softcover.hpp"

namespace sclab {

namespace {

namespace fs = std::filesystem;

struct CommonOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> n;
  std::optional<unsigned> threads;

  unsigned thread_count() const {
    return threads ? *threads : default_thread_count();
  }
};

void add_common_options(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "JSON experiment config")
      ->required();
  cmd->add_option("--out", opts.out_dir,
                  "output directory for results.csv and summary.json");
  cmd->add_option("--seed", opts.seed, "override the config seed");
  cmd->add_option("--trials", opts.trials, "override the trial count");
  cmd->add_option("--n", opts.n, "override the blocklength");
  cmd->add_option("--threads", opts.threads,
                  "worker threads (default: SOFTCOVER_THREADS or all cores)");
}

Json load_scheme_config(const CommonOptions& opts, const char* scheme) {
  Json cfg = load_json_file(opts.config_path);
  if (!cfg.is_object() || !cfg.contains("scheme")) {
    throw ConfigError("config: missing 'scheme' field");
  }
  if (cfg.at("scheme").get<std::string>() != scheme) {
    throw ConfigError("config: scheme '" +
                      cfg.at("scheme").get<std::string>() +
                      "' does not match subcommand '" + scheme + "'");
  }
  return cfg;
}

void reject_override(const std::optional<std::uint64_t>& seed,
                     const std::optional<std::size_t>& trials,
                     const std::optional<std::size_t>& n,
                     const char* scheme, bool allow_seed) {
  if (seed && !allow_seed) {
    throw ConfigError(std::string("--seed does not apply to ") + scheme);
  }
  if (trials) {
    throw ConfigError(std::string("--trials does not apply to ") + scheme);
  }
  if (n) throw ConfigError(std::string("--n does not apply to ") + scheme);
}

Json base_summary(const char* scheme, const Json& config_echo) {
  Json s = Json::object();
  s["artifact"] = Json{{"name", kArtifactName}, {"version", kArtifactVersion}};
  s["scheme"] = scheme;
  s["config"] = config_echo;
  return s;
}

void write_outputs(const std::string& out_dir,
                   const std::vector<std::vector<std::string>>& csv_rows,
                   const Json& summary) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory " + out_dir +
                             ": " + ec.message());
  }
  CsvFile csv(fs::path(out_dir) / "results.csv");
  for (const auto& row : csv_rows) csv.row(row);
  std::ofstream js(fs::path(out_dir) / "summary.json", std::ios::binary);
  if (!js) throw std::runtime_error("cannot write summary.json");
  js << summary.dump(2) << '\n';
}

ReconstructionMap parse_phi_or_greedy(const Json& j, const JointPmf& joint_xvb,
                                      const DistortionMeasure& d,
                                      const std::string& context) {
  if (j.is_string()) {
    if (j.get<std::string>() != "greedy") {
      throw ConfigError(context + ": expected \"greedy\" or a table");
    }
    return greedy_reconstruction(joint_xvb, d);
  }
  return parse_reconstruction(j, joint_xvb.dim(1), joint_xvb.dim(2),
                              d.num_reproductions(), context);
}

Json trial_summary_results(const ExperimentSummary& summary) {
  Json r = Json::object();
  r["trials"] = summary.trials.size();
  r["mean_distortion"] = summary.mean_distortions;
  r["stderr_distortion"] = summary.stderr_distortions;
  if (summary.virtual_error_rate.has_value()) {
    r["virtual_error_rate"] = *summary.virtual_error_rate;
  }
  r["codebooks_used"] = summary.codebooks_used;
  r["encoder_degenerate_trials"] = summary.encoder_degenerate_trials;
  r["decoder_degenerate_trials"] = summary.decoder_degenerate_trials;
  return r;
}

// ---------------------------------------------------------------------------
// Solver subcommands.
// ---------------------------------------------------------------------------

void run_rd(const CommonOptions& opts) {
  Json cfg = load_scheme_config(opts, "rd");
  reject_override(opts.seed, opts.trials, opts.n, "rd", false);
  check_fields(cfg, "rd config",
               {"scheme", "source", "distortion", "targets"}, {"problem_id"});
  const std::string problem_id =
      cfg.value("problem_id", std::string("rd"));
  Pmf source = parse_pmf(cfg.at("source"), "source");
  DistortionMeasure d = parse_distortion(cfg.at("distortion"), "distortion");
  if (!cfg.at("targets").is_array() || cfg.at("targets").empty()) {
    throw ConfigError("targets: expected a nonempty array");
  }

  struct Row {
    double target, achieved, rate;
    SolverStatus status;
    std::size_t iterations;
  };
  std::vector<Row> rows;
  for (const auto& t : cfg.at("targets")) {
    double target = parse_number(t, "targets");
    RateDistortionPoint p = blahut_arimoto_rd(source, d, target);
    rows.push_back({target, p.distortions[0], p.rates[0], p.status,
                    p.iterations});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return a.achieved < b.achieved;
  });

  std::vector<std::vector<std::string>> csv = {
      {"problem_id", "D", "R", "status", "iterations"}};
  Json points = Json::array();
  for (const auto& r : rows) {
    csv.push_back({problem_id, csv_number(r.achieved), csv_number(r.rate),
                   to_string(r.status), std::to_string(r.iterations)});
    points.push_back(Json{{"target_d", r.target},
                          {"D", r.achieved},
                          {"R", r.rate},
                          {"status", to_string(r.status)},
                          {"iterations", r.iterations}});
  }
  Json summary = base_summary("rd", cfg);
  summary["results"] = Json{{"points", points}};
  summary["warnings"] = Json::array();
  write_outputs(opts.out_dir, csv, summary);
}

void run_wz_rate(const CommonOptions& opts) {
  Json cfg = load_scheme_config(opts, "wz-rate");
  reject_override(std::nullopt, opts.trials, opts.n, "wz-rate", true);
  check_fields(cfg, "wz-rate config",
               {"scheme", "joint_xb", "distortion", "targets"},
               {"problem_id", "restarts", "seed"});
  const std::string problem_id = cfg.value("problem_id", std::string("wz"));
  JointPmf joint = parse_joint2(cfg.at("joint_xb"), "joint_xb");
  DistortionMeasure d = parse_distortion(cfg.at("distortion"), "distortion");
  WynerZivOptions wz_opts;
  if (cfg.contains("restarts")) {
    wz_opts.restarts = parse_count(cfg.at("restarts"), "restarts");
  }
  if (cfg.contains("seed")) wz_opts.seed = parse_seed(cfg.at("seed"), "seed");
  if (opts.seed) wz_opts.seed = *opts.seed;

  struct Row {
    double target, achieved, rate;
    SolverStatus status;
    std::size_t iterations;
  };
  std::vector<Row> rows;
  for (const auto& t : cfg.at("targets")) {
    double target = parse_number(t, "targets");
    RateDistortionPoint p = wyner_ziv_rate(joint, d, target, wz_opts);
    rows.push_back({target, p.distortions[0], p.rates[0], p.status,
                    p.iterations});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return a.achieved < b.achieved;
  });

  std::vector<std::vector<std::string>> csv = {
      {"problem_id", "D", "R", "status", "iterations"}};
  Json points = Json::array();
  for (const auto& r : rows) {
    csv.push_back({problem_id, csv_number(r.achieved), csv_number(r.rate),
                   to_string(r.status), std::to_string(r.iterations)});
    points.push_back(Json{{"target_d", r.target},
                          {"D", r.achieved},
                          {"R", r.rate},
                          {"status", to_string(r.status)},
                          {"iterations", r.iterations}});
  }
  Json summary = base_summary("wz-rate", cfg);
  summary["derived"] =
      Json{{"restarts", wz_opts.restarts}, {"solver_seed", wz_opts.seed},
           {"note", "upper bound from multi-start alternating descent with a "
                    "deterministic grid pass; auxiliary cardinality |X|+1"}};
  summary["results"] = Json{{"points", points}};
  summary["warnings"] = Json::array();
  write_outputs(opts.out_dir, csv, summary);
}

void run_bt_corner(const CommonOptions& opts) {
  Json cfg = load_scheme_config(opts, "bt-corner");
  reject_override(opts.seed, opts.trials, opts.n, "bt-corner", false);
  check_fields(cfg, "bt-corner config",
               {"scheme", "joint_x1x2", "test_channel_1", "test_channel_2",
                "phi1", "phi2", "distortion1", "distortion2"},
               {"problem_id", "corners", "time_share_lambdas"});
  const std::string problem_id = cfg.value("problem_id", std::string("bt"));
  JointPmf joint = parse_joint2(cfg.at("joint_x1x2"), "joint_x1x2");
  Channel ch1 = parse_channel(cfg.at("test_channel_1"), "test_channel_1");
  Channel ch2 = parse_channel(cfg.at("test_channel_2"), "test_channel_2");
  DistortionMeasure d1 = parse_distortion(cfg.at("distortion1"), "distortion1");
  DistortionMeasure d2 = parse_distortion(cfg.at("distortion2"), "distortion2");
  JointPmf j1 = bt_joint_xk_u1u2(joint, ch1, ch2, 0);
  JointPmf j2 = bt_joint_xk_u1u2(joint, ch1, ch2, 1);
  ReconstructionMap phi1 = parse_phi_or_greedy(cfg.at("phi1"), j1, d1, "phi1");
  ReconstructionMap phi2 = parse_phi_or_greedy(cfg.at("phi2"), j2, d2, "phi2");

  std::vector<std::string> corners = {"C1", "C2"};
  if (cfg.contains("corners")) {
    corners.clear();
    for (const auto& c : cfg.at("corners")) {
      corners.push_back(c.get<std::string>());
    }
  }

  std::vector<std::vector<std::string>> csv = {{"problem_id", "point", "R1",
                                                "R2", "D1", "D2", "status",
                                                "iterations"}};
  Json points = Json::array();
  RateDistortionPoint c1 = berger_tung_corner(joint, ch1, ch2, phi1, phi2, d1,
                                              d2, Corner::kFirstDecodedFirst);
  RateDistortionPoint c2 = berger_tung_corner(joint, ch1, ch2, phi1, phi2, d1,
                                              d2, Corner::kSecondDecodedFirst);
  auto emit = [&](const std::string& label, const RateDistortionPoint& p) {
    csv.push_back({problem_id, label, csv_number(p.rates[0]),
                   csv_number(p.rates[1]), csv_number(p.distortions[0]),
                   csv_number(p.distortions[1]), to_string(p.status),
                   std::to_string(p.iterations)});
    points.push_back(Json{{"point", label},
                          {"R1", p.rates[0]},
                          {"R2", p.rates[1]},
                          {"D1", p.distortions[0]},
                          {"D2", p.distortions[1]},
                          {"status", to_string(p.status)}});
  };
  for (const auto& c : corners) {
    if (c == "C1") {
      emit("C1", c1);
    } else if (c == "C2") {
      emit("C2", c2);
    } else {
      throw ConfigError("corners: expected \"C1\" or \"C2\"");
    }
  }
  if (cfg.contains("time_share_lambdas")) {
    for (const auto& l : cfg.at("time_share_lambdas")) {
      double lambda = parse_number(l, "time_share_lambdas");
      emit("ts_" + csv_number(lambda), time_share(c1, c2, lambda));
    }
  }

  Json summary = base_summary("bt-corner", cfg);
  summary["derived"] = Json{{"phi1", reconstruction_to_json(phi1)},
                            {"phi2", reconstruction_to_json(phi2)}};
  summary["results"] = Json{{"points", points}};
  summary["warnings"] = Json::array();
  write_outputs(opts.out_dir, csv, summary);
}

// ---------------------------------------------------------------------------
// Simulation subcommands.
// ---------------------------------------------------------------------------

void run_sim_p2p(const CommonOptions& opts) {
  Json cfg = load_scheme_config(opts, "p2p");
  check_fields(cfg, "p2p config",
               {"scheme", "source", "enc_channel", "codeword_pmf",
                "distortion", "n", "rate", "trials", "master_seed"},
               {"codebooks_per_experiment"});
  if (opts.seed) cfg["master_seed"] = *opts.seed;
  if (opts.trials) cfg["trials"] = *opts.trials;
  if (opts.n) cfg["n"] = *opts.n;

  P2PConfig sim{parse_pmf(cfg.at("source"), "source"),
                parse_channel(cfg.at("enc_channel"), "enc_channel"),
                parse_pmf(cfg.at("codeword_pmf"), "codeword_pmf"),
                parse_distortion(cfg.at("distortion"), "distortion"),
                parse_count(cfg.at("n"), "n"),
                parse_number(cfg.at("rate"), "rate"),
                parse_count(cfg.at("trials"), "trials"),
                parse_seed(cfg.at("master_seed"), "master_seed")};
  if (cfg.contains("codebooks_per_experiment")) {
    sim.codebooks_per_experiment =
        parse_count(cfg.at("codebooks_per_experiment"),
                    "codebooks_per_experiment");
  }
  P2PScheme scheme(sim);  // early validation, derived quantities
  ExperimentSummary result = run_experiment(sim, opts.thread_count());

  std::vector<std::vector<std::string>> csv = {
      {"trial", "trial_seed", "distortion", "encoder_degenerate"}};
  for (std::size_t i = 0; i < result.trials.size(); ++i) {
    const TrialResult& t = result.trials[i];
    csv.push_back({std::to_string(i), std::to_string(t.trial_seed),
                   csv_number(t.distortions[0]),
                   t.encoder_degenerate ? "1" : "0"});
  }
  Json summary = base_summary("p2p", cfg);
  summary["derived"] = Json{
      {"info_xy", scheme.info_bits()},
      {"num_m", Codebook::index_count(sim.n, sim.rate)}};
  summary["results"] = trial_summary_results(result);
  summary["warnings"] = result.warnings;
  write_outputs(opts.out_dir, csv, summary);
}

void run_sim_wz(const CommonOptions& opts) {
  Json cfg = load_scheme_config(opts, "wz");
  check_fields(cfg, "wz config",
               {"scheme", "joint_xb", "test_channel", "phi", "distortion",
                "n", "trials", "master_seed"},
               {"rate_r", "rate_rprime", "margins",
                "codebooks_per_experiment"});
  if (opts.seed) cfg["master_seed"] = *opts.seed;
  if (opts.trials) cfg["trials"] = *opts.trials;
  if (opts.n) cfg["n"] = *opts.n;

  JointPmf joint_xb = parse_joint2(cfg.at("joint_xb"), "joint_xb");
  Channel test_channel = parse_channel(cfg.at("test_channel"), "test_channel");
  DistortionMeasure d = parse_distortion(cfg.at("distortion"), "distortion");
  JointPmf joint_xvb = wz_joint_xvb(joint_xb, test_channel);
  ReconstructionMap phi =
      parse_phi_or_greedy(cfg.at("phi"), joint_xvb, d, "phi");

  // Rates come either explicitly or as margins against the fixture's
  // information quantities: R' = I(V;B) - channel_decoding and
  // R = I(X;V) + soft_covering - R'.
  double rate_r = 0.0, rate_rprime = 0.0;
  {
    JointPmf joint_xv = compose(marginal(joint_xb, 0), test_channel);
    Pmf pmf_v = marginal(joint_xv, 1);
    Channel x_given_v = condition_on(joint_xv, 1);
    Channel b_given_v =
        compose_channels(x_given_v, condition_on(joint_xb, 0));
    double ixv = mutual_information(joint_xv);
    double ivb = mutual_information(compose(pmf_v, b_given_v));
    const bool explicit_rates =
        cfg.contains("rate_r") || cfg.contains("rate_rprime");
    if (explicit_rates && cfg.contains("margins")) {
      throw ConfigError("wz config: give explicit rates or margins, not both");
    }
    if (explicit_rates) {
      if (!cfg.contains("rate_r") || !cfg.contains("rate_rprime")) {
        throw ConfigError("wz config: rate_r and rate_rprime go together");
      }
      rate_r = parse_number(cfg.at("rate_r"), "rate_r");
      rate_rprime = parse_number(cfg.at("rate_rprime"), "rate_rprime");
    } else {
      double soft = 0.15, chan = 0.15;
      if (cfg.contains("margins")) {
        check_fields(cfg.at("margins"), "margins", {},
                     {"soft_covering", "channel_decoding"});
        soft = cfg.at("margins").value("soft_covering", 0.15);
        chan = cfg.at("margins").value("channel_decoding", 0.15);
      }
      rate_rprime = std::max(ivb - chan, 0.0);
      rate_r = std::max(ixv + soft - rate_rprime, 0.0);
    }
  }

  WZConfig sim{joint_xb,
               test_channel,
               phi,
               d,
               parse_count(cfg.at("n"), "n"),
               rate_r,
               rate_rprime,
               parse_count(cfg.at("trials"), "trials"),
               parse_seed(cfg.at("master_seed"), "master_seed")};
  if (cfg.contains("codebooks_per_experiment")) {
    sim.codebooks_per_experiment =
        parse_count(cfg.at("codebooks_per_experiment"),
                    "codebooks_per_experiment");
  }
  WZScheme scheme(sim);
  ExperimentSummary result = run_experiment(sim, opts.thread_count());

  std::vector<std::vector<std::string>> csv = {
      {"trial", "trial_seed", "distortion", "virtual_decode_ok",
       "encoder_degenerate", "decoder_degenerate"}};
  for (std::size_t i = 0; i < result.trials.size(); ++i) {
    const TrialResult& t = result.trials[i];
    csv.push_back({std::to_string(i), std::to_string(t.trial_seed),
                   csv_number(t.distortions[0]),
                   *t.virtual_decode_ok ? "1" : "0",
                   t.encoder_degenerate ? "1" : "0",
                   t.decoder_degenerate ? "1" : "0"});
  }
  Json summary = base_summary("wz", cfg);
  summary["derived"] =
      Json{{"rate_r", sim.rate_r},
           {"rate_rprime", sim.rate_rprime},
           {"info_xv", scheme.info_xv()},
           {"info_vb", scheme.info_vb()},
           {"num_m", Codebook::index_count(sim.n, sim.rate_r)},
           {"num_mprime", Codebook::index_count(sim.n, sim.rate_rprime)},
           {"phi", reconstruction_to_json(phi)}};
  summary["results"] = trial_summary_results(result);
  summary["warnings"] = result.warnings;
  write_outputs(opts.out_dir, csv, summary);
}

void run_sim_bt(const CommonOptions& opts) {
  Json cfg = load_scheme_config(opts, "bt");
  check_fields(cfg, "bt config",
               {"scheme", "joint_x1x2", "test_channel_1", "test_channel_2",
                "phi1", "phi2", "distortion1", "distortion2", "n", "rate_1",
                "rate_2", "rate_2prime", "trials", "master_seed"},
               {"codebooks_per_experiment"});
  if (opts.seed) cfg["master_seed"] = *opts.seed;
  if (opts.trials) cfg["trials"] = *opts.trials;
  if (opts.n) cfg["n"] = *opts.n;

  JointPmf joint = parse_joint2(cfg.at("joint_x1x2"), "joint_x1x2");
  Channel ch1 = parse_channel(cfg.at("test_channel_1"), "test_channel_1");
  Channel ch2 = parse_channel(cfg.at("test_channel_2"), "test_channel_2");
  DistortionMeasure d1 = parse_distortion(cfg.at("distortion1"), "distortion1");
  DistortionMeasure d2 = parse_distortion(cfg.at("distortion2"), "distortion2");
  ReconstructionMap phi1 = parse_phi_or_greedy(
      cfg.at("phi1"), bt_joint_xk_u1u2(joint, ch1, ch2, 0), d1, "phi1");
  ReconstructionMap phi2 = parse_phi_or_greedy(
      cfg.at("phi2"), bt_joint_xk_u1u2(joint, ch1, ch2, 1), d2, "phi2");

  BTConfig sim{joint,
               ch1,
               ch2,
               phi1,
               phi2,
               d1,
               d2,
               parse_count(cfg.at("n"), "n"),
               parse_number(cfg.at("rate_1"), "rate_1"),
               parse_number(cfg.at("rate_2"), "rate_2"),
               parse_number(cfg.at("rate_2prime"), "rate_2prime"),
               parse_count(cfg.at("trials"), "trials"),
               parse_seed(cfg.at("master_seed"), "master_seed")};
  if (cfg.contains("codebooks_per_experiment")) {
    sim.codebooks_per_experiment =
        parse_count(cfg.at("codebooks_per_experiment"),
                    "codebooks_per_experiment");
  }
  BTScheme scheme(sim);
  ExperimentSummary result = run_experiment(sim, opts.thread_count());

  std::vector<std::vector<std::string>> csv = {
      {"trial", "trial_seed", "distortion1", "distortion2",
       "virtual_decode_ok", "encoder_degenerate", "decoder_degenerate"}};
  for (std::size_t i = 0; i < result.trials.size(); ++i) {
    const TrialResult& t = result.trials[i];
    csv.push_back({std::to_string(i), std::to_string(t.trial_seed),
                   csv_number(t.distortions[0]), csv_number(t.distortions[1]),
                   *t.virtual_decode_ok ? "1" : "0",
                   t.encoder_degenerate ? "1" : "0",
                   t.decoder_degenerate ? "1" : "0"});
  }
  Json summary = base_summary("bt", cfg);
  summary["derived"] =
      Json{{"info_x1u1", scheme.info_x1u1()},
           {"info_x2u2", scheme.info_x2u2()},
           {"info_u1u2", scheme.info_u1u2()},
           {"num_m1", Codebook::index_count(sim.n, sim.rate_1)},
           {"num_m2", Codebook::index_count(sim.n, sim.rate_2)},
           {"num_m2prime", Codebook::index_count(sim.n, sim.rate_2prime)},
           {"phi1", reconstruction_to_json(phi1)},
           {"phi2", reconstruction_to_json(phi2)}};
  summary["results"] = trial_summary_results(result);
  summary["warnings"] = result.warnings;
  write_outputs(opts.out_dir, csv, summary);
}

// ---------------------------------------------------------------------------
// Covering and identity subcommands.
// ---------------------------------------------------------------------------

void run_softcover(const CommonOptions& opts) {
  Json cfg = load_scheme_config(opts, "softcover");
  check_fields(cfg, "softcover config",
               {"scheme", "rates", "ns", "codebooks_per_cell", "master_seed"},
               {"joint", "joint_xb", "test_channel"});
  if (opts.seed) cfg["master_seed"] = *opts.seed;
  if (opts.trials) cfg["codebooks_per_cell"] = *opts.trials;
  if (opts.n) cfg["ns"] = Json::array({*opts.n});

  std::optional<JointPmf> joint;
  if (cfg.contains("joint")) {
    if (cfg.contains("joint_xb") || cfg.contains("test_channel")) {
      throw ConfigError(
          "softcover config: give 'joint' or the pair-output form "
          "('joint_xb' + 'test_channel'), not both");
    }
    joint = parse_joint2(cfg.at("joint"), "joint");
  } else {
    if (!cfg.contains("joint_xb") || !cfg.contains("test_channel")) {
      throw ConfigError(
          "softcover config: need 'joint' or 'joint_xb' + 'test_channel'");
    }
    joint = pair_output_joint(
        parse_joint2(cfg.at("joint_xb"), "joint_xb"),
        parse_channel(cfg.at("test_channel"), "test_channel"));
  }
  std::vector<double> rates;
  for (const auto& r : cfg.at("rates")) rates.push_back(parse_number(r, "rates"));
  std::vector<std::size_t> ns;
  for (const auto& n : cfg.at("ns")) ns.push_back(parse_count(n, "ns"));

  SoftcoverReport report = softcover_sweep(
      *joint, rates, ns, parse_count(cfg.at("codebooks_per_cell"),
                                     "codebooks_per_cell"),
      parse_seed(cfg.at("master_seed"), "master_seed"), opts.thread_count());

  std::vector<std::vector<std::string>> csv = {
      {"rate", "n", "codebook_index", "tv", "mean_tv"}};
  Json cells = Json::array();
  for (const auto& cell : report.cells) {
    for (std::size_t c = 0; c < cell.tvs.size(); ++c) {
      csv.push_back({csv_number(cell.rate), std::to_string(cell.n),
                     std::to_string(c), csv_number(cell.tvs[c]),
                     csv_number(cell.mean_tv)});
    }
    cells.push_back(Json{{"rate", cell.rate},
                         {"n", cell.n},
                         {"num_codewords", cell.num_codewords},
                         {"mean_tv", cell.mean_tv}});
  }
  Json summary = base_summary("softcover", cfg);
  summary["derived"] =
      Json{{"mutual_information", report.mutual_information_bits},
           {"note", "exact enumeration; trend-based evidence only, no decay "
                    "constant is asserted"}};
  summary["results"] = Json{{"cells", cells}};
  summary["warnings"] = Json::array();
  write_outputs(opts.out_dir, csv, summary);
}

void run_verify_identities(const CommonOptions& opts) {
  Json cfg = load_scheme_config(opts, "verify-identities");
  reject_override(opts.seed, opts.trials, opts.n, "verify-identities", false);
  check_fields(cfg, "verify-identities config", {"scheme"},
               {"fixtures", "tolerance"});
  double tolerance = cfg.value("tolerance", 1e-12);

  std::vector<QIdentityFixture> fixtures;
  if (cfg.contains("fixtures")) {
    std::size_t i = 0;
    for (const auto& f : cfg.at("fixtures")) {
      fixtures.push_back(
          parse_q_fixture(f, "fixtures[" + std::to_string(i++) + "]"));
    }
  } else {
    fixtures = builtin_q_fixtures();
  }

  std::vector<std::vector<std::string>> csv = {
      {"fixture", "check", "max_abs_error", "pass"}};
  Json rows = Json::array();
  bool all_pass = true;
  for (const auto& f : fixtures) {
    QIdentityReport r = verify_q_identities(f);
    bool pass_a = r.posterior_max_error <= tolerance;
    all_pass = all_pass && pass_a;
    csv.push_back({r.name, "encoder_posterior",
                   csv_number(r.posterior_max_error), pass_a ? "1" : "0"});
    rows.push_back(Json{{"fixture", r.name},
                        {"check", "encoder_posterior"},
                        {"max_abs_error", r.posterior_max_error},
                        {"sequences_checked", r.sequences_checked},
                        {"pass", pass_a}});
    if (r.ensemble_checked) {
      bool pass_b = r.ensemble_max_error <= tolerance;
      all_pass = all_pass && pass_b;
      csv.push_back({r.name, "ensemble_average",
                     csv_number(r.ensemble_max_error), pass_b ? "1" : "0"});
      rows.push_back(Json{{"fixture", r.name},
                          {"check", "ensemble_average"},
                          {"max_abs_error", r.ensemble_max_error},
                          {"ensembles_checked", r.ensembles_checked},
                          {"pass", pass_b}});
    }
  }
  Json summary = base_summary("verify-identities", cfg);
  summary["results"] = Json{{"checks", rows}, {"all_pass", all_pass},
                            {"tolerance", tolerance}};
  summary["warnings"] = Json::array();
  write_outputs(opts.out_dir, csv, summary);
}

void run_dump_codebook(const CommonOptions& opts) {
  Json cfg = load_scheme_config(opts, "dump-codebook");
  reject_override(std::nullopt, opts.trials, std::nullopt, "dump-codebook",
                  true);
  check_fields(cfg, "dump-codebook config",
               {"scheme", "generator", "n", "rate_r", "rate_rprime", "seed"},
               {});
  if (opts.seed) cfg["seed"] = *opts.seed;
  if (opts.n) cfg["n"] = *opts.n;
  Codebook cb = Codebook::generate(
      parse_pmf(cfg.at("generator"), "generator"),
      parse_count(cfg.at("n"), "n"), parse_number(cfg.at("rate_r"), "rate_r"),
      parse_number(cfg.at("rate_rprime"), "rate_rprime"),
      parse_seed(cfg.at("seed"), "seed"));

  std::vector<std::string> header = {"m", "mprime"};
  for (std::size_t t = 0; t < cb.n(); ++t)
    header.push_back("s" + std::to_string(t));
  std::vector<std::vector<std::string>> csv = {header};
  for (std::size_t m = 0; m < cb.num_m(); ++m)
    for (std::size_t mp = 0; mp < cb.num_mprime(); ++mp) {
      std::vector<std::string> row = {std::to_string(m), std::to_string(mp)};
      for (std::size_t t = 0; t < cb.n(); ++t)
        row.push_back(std::to_string(cb.letter(m, mp, t)));
      csv.push_back(row);
    }
  Json summary = base_summary("dump-codebook", cfg);
  summary["results"] = Json{{"num_m", cb.num_m()},
                            {"num_mprime", cb.num_mprime()},
                            {"n", cb.n()}};
  summary["warnings"] = Json::array();
  write_outputs(opts.out_dir, csv, summary);
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"finite-alphabet lossy source coding laboratory"};
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    const char* help;
    void (*handler)(const CommonOptions&);
  };
  const Sub subs[] = {
      {"rd", "single-source rate-distortion sweep", run_rd},
      {"wz-rate", "rate-distortion with decoder side information", run_wz_rate},
      {"bt-corner", "two-encoder corner points and time sharing",
       run_bt_corner},
      {"sim-p2p", "point-to-point coding simulation", run_sim_p2p},
      {"sim-wz", "side-information coding simulation", run_sim_wz},
      {"sim-bt", "two-encoder coding simulation", run_sim_bt},
      {"softcover", "exact covering total-variation sweep", run_softcover},
      {"verify-identities", "auxiliary-distribution identity checks",
       run_verify_identities},
      {"dump-codebook", "materialize a codebook as CSV", run_dump_codebook},
  };
  std::vector<std::unique_ptr<CommonOptions>> options;
  for (const Sub& sub : subs) {
    options.push_back(std::make_unique<CommonOptions>());
    CommonOptions* opts = options.back().get();
    CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
    add_common_options(cmd, *opts);
    auto handler = sub.handler;
    cmd->callback([opts, handler] { handler(*opts); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 3;
  }
  return 0;
}

}  // namespace sclab
