#ifndef SEPCS_ERRORS_HPP
#define SEPCS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sepcs {

// All library failures derive from Error so callers (the CLI in particular)
// can map them onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SEPCS_DEFINE_ERROR(Name)          \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  }

SEPCS_DEFINE_ERROR(InputError);
SEPCS_DEFINE_ERROR(InfeasibleProfile);
SEPCS_DEFINE_ERROR(InvalidCostOracle);
SEPCS_DEFINE_ERROR(NotABasis);
SEPCS_DEFINE_ERROR(NotInBasis);
SEPCS_DEFINE_ERROR(NotEnforceable);
SEPCS_DEFINE_ERROR(NotBudgetBalanced);
SEPCS_DEFINE_ERROR(UnsupportedSpace);
SEPCS_DEFINE_ERROR(Unsupported);
SEPCS_DEFINE_ERROR(Disconnected);
SEPCS_DEFINE_ERROR(NotSeriesParallel);
SEPCS_DEFINE_ERROR(NoTightAlternative);
SEPCS_DEFINE_ERROR(BudgetExceeded);
SEPCS_DEFINE_ERROR(InternalInvariant);

#undef SEPCS_DEFINE_ERROR

// Enumeration limits: all of these surface as "budget exceeded".
class TooLarge : public BudgetExceeded {
 public:
  using BudgetExceeded::BudgetExceeded;
};

class TooManyPaths : public BudgetExceeded {
 public:
  using BudgetExceeded::BudgetExceeded;
};

}  // namespace sepcs

#endif  // SEPCS_ERRORS_HPP
