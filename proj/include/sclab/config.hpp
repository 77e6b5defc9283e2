#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "sclab/prob.hpp"
#include "sclab/reconstruction.hpp"
#include "sclab/softcover.hpp"

namespace sclab {

// Key order preserved so config echoes and summaries are byte-stable.
using Json = nlohmann::ordered_json;

/// Malformed or inconsistent experiment configuration; maps to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Json load_json_file(const std::string& path);

// Rejects unknown fields and reports missing required ones.
void check_fields(const Json& obj, const std::string& context,
                  const std::vector<std::string>& required,
                  const std::vector<std::string>& optional);

Pmf parse_pmf(const Json& j, const std::string& context);
Channel parse_channel(const Json& j, const std::string& context);
JointPmf parse_joint2(const Json& j, const std::string& context);
DistortionMeasure parse_distortion(const Json& j, const std::string& context);
ReconstructionMap parse_reconstruction(const Json& j, std::size_t num_v,
                                       std::size_t num_b, std::size_t num_y,
                                       const std::string& context);
QIdentityFixture parse_q_fixture(const Json& j, const std::string& context);

double parse_number(const Json& j, const std::string& context);
std::size_t parse_count(const Json& j, const std::string& context);
std::uint64_t parse_seed(const Json& j, const std::string& context);

Json pmf_to_json(const Pmf& p);
Json channel_to_json(const Channel& ch);
Json joint_to_json(const JointPmf& j);
Json distortion_to_json(const DistortionMeasure& d);
Json reconstruction_to_json(const ReconstructionMap& phi);

}  // namespace sclab
