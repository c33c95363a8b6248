#include "specm/error.hpp"

namespace specm {

namespace {
struct Entry {
  std::string_view id;
  std::string_view name;
};

constexpr Entry kEntries[] = {
    {"E001", "ZeroPolynomial"},
    {"E002", "MalformedPartition"},
    {"E003", "UnboundedPiece"},
    {"E004", "DomainMismatch"},
    {"E005", "OutsideFragment"},
    {"E006", "OutOfDomain"},
    {"E007", "NotDifferentiableFragment"},
    {"E008", "WholeRing"},
    {"E009", "NotFromIdeal"},
    {"E010", "IdenticalDescriptors"},
    {"E011", "TooLarge"},
    {"E012", "BadModulus"},
    {"E013", "NotMaximal"},
    {"E014", "InvalidArgument"},
    {"E015", "ParseError"},
};
}  // namespace

std::string_view error_id(ErrorCode code) { return kEntries[static_cast<int>(code)].id; }
std::string_view error_name(ErrorCode code) { return kEntries[static_cast<int>(code)].name; }

}  // namespace specm
