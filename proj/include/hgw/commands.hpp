#pragma once

#include "hgw/hypercore.hpp"
#include "hgw/report.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace hgw::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitError = 2;

/// Runs one command line (without the program name). Reports go to out,
/// diagnostics and timing to err. Returns 0 when every check passes, 1 when
/// some check fails, 2 on usage, structural, or IO errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

const std::vector<std::string>& command_names();

/// Which command owns each library operation.
struct OperationRoute {
  const char* module;
  const char* operation;
  const char* command;
};

std::span<const OperationRoute> operation_routes();

/// The theorem-verification harness over a list of hypergroups.
Report verify_theorems(const std::vector<Hypergroup>& hypergroups, double axiom_tol, double tol, std::uint64_t seed,
                       const std::string& echo);

}  // namespace hgw::cli
