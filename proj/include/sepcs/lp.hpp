#ifndef SEPCS_LP_HPP
#define SEPCS_LP_HPP

#include <string>
#include <string_view>
#include <vector>

#include "sepcs/rational.hpp"

namespace sepcs {

/// max objective . x  subject to  rows[k].coef . x <= rows[k].rhs,  x >= 0.
struct LinearProgram {
  struct Row {
    std::vector<Rational> coef;
    Rational rhs;
  };

  explicit LinearProgram(int num_vars = 0)
      : num_vars(num_vars), objective(num_vars, Rational(0)) {}

  int num_vars;
  std::vector<Rational> objective;
  std::vector<Row> rows;

  /// Appends a row; `coef` is resized to num_vars.
  int add_row(std::vector<Rational> coef, Rational rhs);
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<Rational> values;  // only for kOptimal
  Rational objective;            // only for kOptimal
  int pivots = 0;
};

/// Two-phase dense tableau simplex over exact rationals with Bland's rule.
/// Every optimum returned is a basic feasible solution that has been
/// certified against the original rows (primal feasibility, dual feasibility
/// and zero duality gap); a failed certificate throws InternalInvariant.
LpSolution solve(const LinearProgram& lp);

/// Plain-text listing: "nvars nrows", objective line, then one line per row
/// with the coefficients followed by the right-hand side, all as "p/q".
std::string dump(const LinearProgram& lp);
/// Inverse of dump(); throws InputError on malformed text.
LinearProgram parse_dump(std::string_view text);

}  // namespace sepcs

#endif  // SEPCS_LP_HPP
