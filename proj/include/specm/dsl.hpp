#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "specm/error.hpp"
#include "specm/ideals.hpp"
#include "specm/piecewise.hpp"
#include "specm/spectrum.hpp"
#include "specm/ultrafilter.hpp"

namespace specm {

/// ParseError carrying the source position and the tokens that would have
/// been accepted there.
class ParseFailure : public Error {
 public:
  ParseFailure(int line, int column, std::set<std::string> expected, const std::string& found);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::set<std::string>& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  int line_, column_;
  std::set<std::string> expected_;
  std::string found_;
};

/// σ literal of the uf command with its modulus (0 when not given).
struct SigmaArg {
  SigmaFn sigma;
  int modulus = 0;
};

/// One command argument after name resolution.
struct CommandArg {
  std::string text;  ///< canonical source rendering, echoed in reports
  std::variant<PiecewiseFn, IdealDesc, MaxIdealDescriptor, SigmaArg> value;
};

struct Command {
  std::string name;
  std::vector<CommandArg> args;
  std::vector<std::string> flags;  ///< bare keywords such as "continuous"
  int line = 0;
};

struct Script {
  Domain domain = Domain::closed(0, 1);
  std::vector<std::pair<std::string, PiecewiseFn>> functions;
  std::vector<std::pair<std::string, IdealDesc>> ideals;
  std::vector<Command> commands;
};

/// Parses a script. `default_domain` applies until a domain statement.
/// Throws ParseFailure for syntax errors and module errors for ill-formed
/// functions (MalformedPartition and friends).
Script parse(std::string_view text, const Domain& default_domain = Domain::closed(0, 1));
/// Parses one function expression over d.
PiecewiseFn parse_function(std::string_view text, const Domain& d);
/// Parses "[a,b]", "(-inf,0]" and the like.
Domain parse_domain(std::string_view text);

/// Canonical DSL text; parse_function(print(f), f.domain()) == f.
std::string print(const PiecewiseFn& f);
std::string print(const IdealDesc& I);
std::string print(const MaxIdealDescriptor& m);

enum class ReportFormat { Text, Json };

struct RunResult {
  std::string output;
  int exit_code = 0;  ///< 0 ok, 1 other module error, 2 OutsideFragment, 3 ParseError
};

/// Executes every command in order. Errors are reported per command and
/// the run continues. `seed` drives the sampled cross-checks.
RunResult run(const Script& script, ReportFormat format, unsigned long seed = 0);
/// Parse then run; parse failures give exit code 3 and an error report.
RunResult run_text(std::string_view text, ReportFormat format, const Domain& default_domain = Domain::closed(0, 1),
                   unsigned long seed = 0);

}  // namespace specm
