#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "specm/error.hpp"
#include "specm/ideals.hpp"
#include "specm/piecewise.hpp"
#include "specm/spectrum.hpp"
#include "specm/zeroset.hpp"

namespace specm {

using Json = nlohmann::ordered_json;

/// "p/q", denominator always explicit.
Json to_json(const Rational& q);
/// "p/q" when rational, otherwise {poly, interval}.
Json to_json(const AlgebraicReal& a);
/// [lo, hi, lo_closed, hi_closed]; infinite ends render as "-inf" / "inf".
Json to_json(const ZInterval& iv);
Json to_json(const AccumFamily& f);
Json to_json(const ZeroSet& z);
Json to_json(const UnitWitness& w);
Json to_json(const CleanCertificate& c);
Json to_json(const Block& b);
Json to_json(const ClosedSetDescriptor& V);
Json to_json(const SearchReport& r);
Json to_json(const ComponentCount& c);

/// One executed command. Keys always appear in this order.
struct CommandReport {
  std::string command;
  Json inputs = Json::object();
  std::string verdict;
  Json witnesses = Json::object();
  Json certificates = Json::object();
  std::optional<ErrorCode> error;
};

Json to_json(const CommandReport& r);
/// Human-readable block: a header line, then one line per witness and
/// certificate entry.
std::string to_text(const CommandReport& r);

/// Error report for a command that threw.
CommandReport error_report(const std::string& command, Json inputs, const Error& e);

/// 0 without errors, 2 when any command hit OutsideFragment, 3 for
/// ParseError, 1 otherwise.
int exit_code(const std::vector<CommandReport>& reports);

}  // namespace specm
