#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace swnoon::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Entry point behind the `swnoon` binary; `args` excludes the program name.
/// Subcommands: generate | fringe | error-sweep | estimate | feasibility.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Header of the error-sweep CSV.
inline constexpr const char* kSweepHeader = "order,lifetime_us,delta_e_mhz,p_success,e_total";

}  // namespace swnoon::cli
