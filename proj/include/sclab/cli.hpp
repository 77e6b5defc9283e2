#pragma once

namespace sclab {

inline constexpr const char* kArtifactName = "sclab";
inline constexpr const char* kArtifactVersion = "0.1.0";

// Batch experiment front door. Returns 0 on success, 2 on configuration
// errors, 3 on runtime failures; single-line diagnostics go to stderr.
int run_cli(int argc, const char* const* argv);

}  // namespace sclab
