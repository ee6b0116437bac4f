#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace evinet::cli {

enum class OutputFormat { kSparse, kDense, kLog };

/// Settings of one `run` invocation.
struct RunConfig {
  std::string net_path;
  /// "ignorance" or a mass record in the net-dsl grammar.
  std::string initial = "ignorance";
  /// File path, or "-" for standard input.
  std::string input = "-";
  OutputFormat format = OutputFormat::kSparse;
};

/// Process-level inputs that do not come from argv.
struct Environment {
  /// Value of EVINET_MAX_PLACES, if set.
  std::optional<std::string> max_places;
};

/// Entry point of the `evinet` tool. `args` excludes the program name.
/// Returns the process exit status: 0 iff no diagnostic was written to `err`.
int main(const std::vector<std::string>& args, std::istream& in,
         std::ostream& out, std::ostream& err, const Environment& env = {});

int cmd_validate(const std::string& net_path, std::ostream& out,
                 std::ostream& err);
int cmd_conflicts(const std::string& net_path, std::ostream& out,
                  std::ostream& err);
/// Emits the initial record, then one record per input line, flushing after
/// each record so a pipe sees beliefs as observations arrive.
int cmd_run(const RunConfig& config, std::istream& in, std::ostream& out,
            std::ostream& err);
int cmd_table(const std::string& net_path, const std::string& output_path,
              std::size_t max_places, std::ostream& out, std::ostream& err);
int cmd_equations(const std::string& net_path, bool minimize,
                  std::size_t max_places, std::ostream& out, std::ostream& err);

}  // namespace evinet::cli
