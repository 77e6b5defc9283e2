#include "sclab/config.hpp"

#include <algorithm>
#include <fstream>

namespace sclab {

Json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file: " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
}

void check_fields(const Json& obj, const std::string& context,
                  const std::vector<std::string>& required,
                  const std::vector<std::string>& optional) {
  if (!obj.is_object()) throw ConfigError(context + ": expected an object");
  for (const auto& key : required) {
    if (!obj.contains(key)) {
      throw ConfigError(context + ": missing required field '" + key + "'");
    }
  }
  for (const auto& item : obj.items()) {
    const std::string& key = item.key();
    if (std::find(required.begin(), required.end(), key) == required.end() &&
        std::find(optional.begin(), optional.end(), key) == optional.end()) {
      throw ConfigError(context + ": unknown field '" + key + "'");
    }
  }
}

namespace {

std::vector<double> parse_number_array(const Json& j,
                                       const std::string& context) {
  if (!j.is_array() || j.empty()) {
    throw ConfigError(context + ": expected a nonempty array of numbers");
  }
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw ConfigError(context + ": expected numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<std::vector<double>> parse_number_matrix(
    const Json& j, const std::string& context) {
  if (!j.is_array() || j.empty()) {
    throw ConfigError(context + ": expected a nonempty array of rows");
  }
  std::vector<std::vector<double>> out;
  for (const auto& row : j) out.push_back(parse_number_array(row, context));
  return out;
}

}  // namespace

Pmf parse_pmf(const Json& j, const std::string& context) {
  try {
    return Pmf(parse_number_array(j, context));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(context + ": " + e.what());
  }
}

Channel parse_channel(const Json& j, const std::string& context) {
  try {
    return Channel(parse_number_matrix(j, context));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(context + ": " + e.what());
  }
}

JointPmf parse_joint2(const Json& j, const std::string& context) {
  auto rows = parse_number_matrix(j, context);
  std::vector<double> flat;
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) {
      throw ConfigError(context + ": ragged joint table");
    }
    flat.insert(flat.end(), r.begin(), r.end());
  }
  try {
    return JointPmf({rows.size(), rows.front().size()}, std::move(flat));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(context + ": " + e.what());
  }
}

DistortionMeasure parse_distortion(const Json& j, const std::string& context) {
  try {
    return DistortionMeasure(parse_number_matrix(j, context));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(context + ": " + e.what());
  }
}

ReconstructionMap parse_reconstruction(const Json& j, std::size_t num_v,
                                       std::size_t num_b, std::size_t num_y,
                                       const std::string& context) {
  if (!j.is_array() || j.size() != num_v) {
    throw ConfigError(context + ": expected " + std::to_string(num_v) +
                      " rows (one per first argument)");
  }
  std::vector<Symbol> table;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != num_b) {
      throw ConfigError(context + ": expected rows of " +
                        std::to_string(num_b) + " symbols");
    }
    for (const auto& v : row) {
      if (!v.is_number_unsigned()) {
        throw ConfigError(context + ": entries must be symbol indices");
      }
      table.push_back(static_cast<Symbol>(v.get<std::size_t>()));
    }
  }
  try {
    return ReconstructionMap(num_v, num_b, num_y, std::move(table));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(context + ": " + e.what());
  }
}

QIdentityFixture parse_q_fixture(const Json& j, const std::string& context) {
  check_fields(j, context,
               {"name", "pmf_v", "x_given_v", "b_given_x", "n", "num_m",
                "num_mprime", "seed"},
               {"ensemble_check"});
  QIdentityFixture f{j.at("name").get<std::string>(),
                     parse_pmf(j.at("pmf_v"), context + ".pmf_v"),
                     parse_channel(j.at("x_given_v"), context + ".x_given_v"),
                     parse_channel(j.at("b_given_x"), context + ".b_given_x"),
                     parse_count(j.at("n"), context + ".n"),
                     parse_count(j.at("num_m"), context + ".num_m"),
                     parse_count(j.at("num_mprime"), context + ".num_mprime"),
                     parse_seed(j.at("seed"), context + ".seed"),
                     true};
  if (j.contains("ensemble_check")) {
    if (!j.at("ensemble_check").is_boolean()) {
      throw ConfigError(context + ".ensemble_check: expected a boolean");
    }
    f.ensemble_check = j.at("ensemble_check").get<bool>();
  }
  return f;
}

double parse_number(const Json& j, const std::string& context) {
  if (!j.is_number()) throw ConfigError(context + ": expected a number");
  return j.get<double>();
}

std::size_t parse_count(const Json& j, const std::string& context) {
  if (!j.is_number_unsigned()) {
    throw ConfigError(context + ": expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

std::uint64_t parse_seed(const Json& j, const std::string& context) {
  if (!j.is_number_unsigned()) {
    throw ConfigError(context + ": expected a nonnegative integer seed");
  }
  return j.get<std::uint64_t>();
}

Json pmf_to_json(const Pmf& p) { return Json(p.probs()); }

Json channel_to_json(const Channel& ch) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < ch.num_inputs(); ++i) rows.push_back(ch.row(i));
  return rows;
}

Json joint_to_json(const JointPmf& j) {
  Json out = Json::array();
  if (j.arity() == 2) {
    for (std::size_t a = 0; a < j.dim(0); ++a) {
      Json row = Json::array();
      for (std::size_t b = 0; b < j.dim(1); ++b) row.push_back(j.at(a, b));
      out.push_back(row);
    }
  } else {
    for (std::size_t a = 0; a < j.dim(0); ++a) {
      Json plane = Json::array();
      for (std::size_t b = 0; b < j.dim(1); ++b) {
        Json row = Json::array();
        for (std::size_t c = 0; c < j.dim(2); ++c) row.push_back(j.at(a, b, c));
        plane.push_back(row);
      }
      out.push_back(plane);
    }
  }
  return out;
}

Json distortion_to_json(const DistortionMeasure& d) {
  Json rows = Json::array();
  for (std::size_t x = 0; x < d.num_sources(); ++x) {
    Json row = Json::array();
    for (std::size_t y = 0; y < d.num_reproductions(); ++y)
      row.push_back(d(x, y));
    rows.push_back(row);
  }
  return rows;
}

Json reconstruction_to_json(const ReconstructionMap& phi) {
  Json rows = Json::array();
  for (std::size_t v = 0; v < phi.num_v(); ++v) {
    Json row = Json::array();
    for (std::size_t b = 0; b < phi.num_b(); ++b)
      row.push_back(static_cast<std::size_t>(phi(v, b)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace sclab
