#ifndef KRIVINE_CLI_HPP
#define KRIVINE_CLI_HPP

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace krivine::cli {

enum class Command { Compute, Verify, List, Trace };
enum class Format { Text, Json, Csv };

struct RunConfig {
  Command command = Command::List;
  std::string target;
  int digits = 20;
  // Unset means the command's own default (1e4 rows of trace, 1e6 base terms
  // for the Khintchine product).
  std::optional<long> max_terms;
  Format format = Format::Text;
  std::optional<std::string> out_path;
  // Report measured runtimes; without it runtime_ms is 0 so that output is
  // byte-identical across runs.
  bool timing = false;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitNotConverged = 2;
inline constexpr int kExitIdentityFailed = 3;
inline constexpr int kExitUsage = 64;

struct ConstantInfo {
  std::string_view name;
  std::string_view anchor;
};

std::span<const ConstantInfo> constants();
std::span<const std::string_view> trace_targets();

/// Runs one invocation.  `args` excludes the program name.  Results go to
/// `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace krivine::cli

#endif  // KRIVINE_CLI_HPP
