#ifndef OPQ_ERRORS_HPP
#define OPQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace opq {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// series parameter makes a denominator Pochhammer vanish before termination
struct SingularParameterError : Error {
  explicit SingularParameterError(const std::string& msg) : Error(msg) {}
};

// parameter vector outside the family's validated ranges
struct InvalidParameterError : Error {
  explicit InvalidParameterError(const std::string& msg) : Error(msg) {}
};

// B(x)D(x+1) < 0 or similar structural violation while building operators
struct InvalidFamilyError : Error {
  explicit InvalidFamilyError(const std::string& msg) : Error(msg) {}
};

// sum of phi_0^2 fails the tail test at the window cap
struct DivergentMeasureError : Error {
  explicit DivergentMeasureError(const std::string& msg) : Error(msg) {}
};

// A_n = 0 or B(x) = 0 hit before the recurrence is complete
struct RecurrenceBreakdownError : Error {
  explicit RecurrenceBreakdownError(const std::string& msg) : Error(msg) {}
};

// closure coefficients outside the regime the reconstruction supports
struct ReconstructionError : Error {
  explicit ReconstructionError(const std::string& msg) : Error(msg) {}
};

struct DualConstructionError : Error {
  explicit DualConstructionError(const std::string& msg) : Error(msg) {}
};

}  // namespace opq

#endif
