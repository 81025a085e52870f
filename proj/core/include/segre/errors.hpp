#ifndef SEGRE_ERRORS_HPP
#define SEGRE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace segre {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed textual input; carries a 0-based character offset.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t pos)
      : Error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
  std::size_t position;
};

struct DimensionError : Error {
  using Error::Error;
};

// A computation did not stabilize within its configured budget.
struct BudgetError : Error {
  using Error::Error;
};

// An internal cross-engine identity failed.  This is the falsification
// channel: it must abort the run, never be downgraded to a warning.
struct DiscrepancyError : Error {
  DiscrepancyError(const std::string& what, std::string dump = {})
      : Error(what), detail(std::move(dump)) {}
  std::string detail;
};

struct VogelError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace segre

#endif
