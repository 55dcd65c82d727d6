#pragma once

#include <iosfwd>

#include "dint/config.hpp"

namespace dint::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kInvalidParams = 1,
  kBadConfig = 2,
  kDiverged = 3,
};

/// Minimum share of unflagged rows for a sweep run to succeed.
inline constexpr double kSweepPassFraction = 0.95;

int cmd_validate(const RunConfig& cfg, std::ostream& out);
int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Dispatches on cfg.command. Library errors are mapped onto exit codes.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line: dint <validate|simulate|sweep|reproduce> [options].
int main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

}  // namespace dint::cli
