#include "sepcs/lp.hpp"

#include <sstream>

#include "sepcs/errors.hpp"

namespace sepcs {

int LinearProgram::add_row(std::vector<Rational> coef, Rational rhs) {
  if (static_cast<int>(coef.size()) > num_vars) throw std::invalid_argument("row longer than variable count");
  coef.resize(num_vars, Rational(0));
  rows.push_back(Row{std::move(coef), std::move(rhs)});
  return static_cast<int>(rows.size()) - 1;
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "?";
}

namespace {

// Dense tableau. Column `width` of each row holds the right-hand side; the
// reduced-cost row `cost` uses the same layout with cost[width] = -objective.
class Tableau {
 public:
  Tableau(int rows, int width)
      : width_(width), a_(rows, std::vector<Rational>(width + 1, Rational(0))),
        cost_(width + 1, Rational(0)), basis_(rows, -1) {}

  int rows() const { return static_cast<int>(a_.size()); }
  int width() const { return width_; }
  Rational& at(int r, int c) { return a_[r][c]; }
  Rational& rhs(int r) { return a_[r][width_]; }
  std::vector<Rational>& cost() { return cost_; }
  std::vector<int>& basis() { return basis_; }
  int pivots() const { return pivots_; }

  void pivot(int r, int c) {
    ++pivots_;
    Rational inv = Rational(1) / a_[r][c];
    for (auto& x : a_[r]) {
      if (!x.is_zero()) x *= inv;
    }
    const auto& prow = a_[r];
    for (int k = 0; k < rows(); ++k) {
      if (k == r || a_[k][c].is_zero()) continue;
      Rational f = a_[k][c];
      for (int j = 0; j <= width_; ++j) {
        if (!prow[j].is_zero()) a_[k][j] -= f * prow[j];
      }
    }
    if (!cost_[c].is_zero()) {
      Rational f = cost_[c];
      for (int j = 0; j <= width_; ++j) {
        if (!prow[j].is_zero()) cost_[j] -= f * prow[j];
      }
    }
    basis_[r] = c;
  }

  /// Expresses the cost row in terms of the current basis.
  void price_out() {
    for (int r = 0; r < rows(); ++r) {
      int b = basis_[r];
      if (cost_[b].is_zero()) continue;
      Rational f = cost_[b];
      for (int j = 0; j <= width_; ++j) {
        if (!a_[r][j].is_zero()) cost_[j] -= f * a_[r][j];
      }
    }
  }

  /// Maximizes with Bland's rule over columns < `active`. Returns false if
  /// the problem is unbounded.
  bool optimize(int active) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < active; ++j) {
        if (cost_[j].sign() > 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (int r = 0; r < rows(); ++r) {
        if (a_[r][enter].sign() <= 0) continue;
        Rational ratio = a_[r][width_] / a_[r][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = std::move(ratio);
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void erase_row(int r) {
    a_.erase(a_.begin() + r);
    basis_.erase(basis_.begin() + r);
  }

 private:
  int width_;
  std::vector<std::vector<Rational>> a_;
  std::vector<Rational> cost_;
  std::vector<int> basis_;
  int pivots_ = 0;
};

void certify(const LinearProgram& lp, const std::vector<Rational>& x, const std::vector<Rational>& y,
             const Rational& objective) {
  auto fail = [](const char* what) { throw InternalInvariant(std::string("LP certificate failed: ") + what); };
  for (const auto& v : x) {
    if (v.sign() < 0) fail("negative primal value");
  }
  Rational primal(0), dual(0);
  for (int j = 0; j < lp.num_vars; ++j) primal += lp.objective[j] * x[j];
  if (primal != objective) fail("objective mismatch");
  for (std::size_t r = 0; r < lp.rows.size(); ++r) {
    Rational lhs(0);
    for (int j = 0; j < lp.num_vars; ++j) lhs += lp.rows[r].coef[j] * x[j];
    if (lhs > lp.rows[r].rhs) fail("row violated");
    if (y[r].sign() < 0) fail("negative dual value");
    dual += lp.rows[r].rhs * y[r];
  }
  for (int j = 0; j < lp.num_vars; ++j) {
    Rational col(0);
    for (std::size_t r = 0; r < lp.rows.size(); ++r) col += lp.rows[r].coef[j] * y[r];
    if (col < lp.objective[j]) fail("reduced cost positive at termination");
  }
  if (dual != primal) fail("duality gap");
}

}  // namespace

LpSolution solve(const LinearProgram& lp) {
  const int n = lp.num_vars;
  const int m = static_cast<int>(lp.rows.size());
  for (const auto& row : lp.rows) {
    if (static_cast<int>(row.coef.size()) != n) throw InputError("LP row width mismatch");
  }
  if (static_cast<int>(lp.objective.size()) != n) throw InputError("LP objective width mismatch");

  int artificials = 0;
  for (const auto& row : lp.rows) artificials += row.rhs.sign() < 0 ? 1 : 0;
  const int slack0 = n;
  const int art0 = n + m;
  const int width = n + m + artificials;

  Tableau t(m, width);
  int next_art = art0;
  for (int r = 0; r < m; ++r) {
    const auto& row = lp.rows[r];
    bool negate = row.rhs.sign() < 0;
    for (int j = 0; j < n; ++j) t.at(r, j) = negate ? -row.coef[j] : row.coef[j];
    t.at(r, slack0 + r) = negate ? Rational(-1) : Rational(1);
    t.rhs(r) = negate ? -row.rhs : row.rhs;
    if (negate) {
      t.at(r, next_art) = Rational(1);
      t.basis()[r] = next_art++;
    } else {
      t.basis()[r] = slack0 + r;
    }
  }

  LpSolution sol;
  if (artificials > 0) {
    for (int j = art0; j < width; ++j) t.cost()[j] = Rational(-1);
    t.price_out();
    t.optimize(width);
    if (t.cost()[width].sign() != 0) {  // -(max of -sum a) != 0
      sol.status = LpStatus::kInfeasible;
      sol.pivots = t.pivots();
      return sol;
    }
    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (int r = t.rows() - 1; r >= 0; --r) {
      if (t.basis()[r] < art0) continue;
      int col = -1;
      for (int j = 0; j < art0; ++j) {
        if (!t.at(r, j).is_zero()) {
          col = j;
          break;
        }
      }
      if (col < 0) {
        t.erase_row(r);
      } else {
        t.pivot(r, col);
      }
    }
  }

  for (auto& c : t.cost()) c = Rational(0);
  for (int j = 0; j < n; ++j) t.cost()[j] = lp.objective[j];
  t.price_out();
  bool bounded = t.optimize(art0);
  sol.pivots = t.pivots();
  if (!bounded) {
    sol.status = LpStatus::kUnbounded;
    return sol;
  }
  sol.status = LpStatus::kOptimal;
  sol.values.assign(n, Rational(0));
  for (int r = 0; r < t.rows(); ++r) {
    if (t.basis()[r] < n) sol.values[t.basis()[r]] = t.rhs(r);
  }
  sol.objective = -t.cost()[width];
  std::vector<Rational> duals(m);
  for (int r = 0; r < m; ++r) duals[r] = -t.cost()[slack0 + r];
  certify(lp, sol.values, duals, sol.objective);
  return sol;
}

std::string dump(const LinearProgram& lp) {
  std::ostringstream os;
  os << lp.num_vars << ' ' << lp.rows.size() << '\n';
  for (int j = 0; j < lp.num_vars; ++j) os << (j ? " " : "") << lp.objective[j].str();
  os << '\n';
  for (const auto& row : lp.rows) {
    for (int j = 0; j < lp.num_vars; ++j) os << row.coef[j].str() << ' ';
    os << row.rhs.str() << '\n';
  }
  return os.str();
}

LinearProgram parse_dump(std::string_view text) {
  std::istringstream is{std::string(text)};
  int nvars = -1;
  long nrows = -1;
  if (!(is >> nvars >> nrows) || nvars < 0 || nrows < 0) throw InputError("bad LP dump header");
  auto next = [&]() {
    std::string tok;
    if (!(is >> tok)) throw InputError("LP dump truncated");
    try {
      return Rational::parse(tok);
    } catch (const std::exception& e) {
      throw InputError(std::string("bad rational in LP dump: ") + e.what());
    }
  };
  LinearProgram lp(nvars);
  for (int j = 0; j < nvars; ++j) lp.objective[j] = next();
  for (long r = 0; r < nrows; ++r) {
    std::vector<Rational> coef(nvars);
    for (int j = 0; j < nvars; ++j) coef[j] = next();
    lp.add_row(std::move(coef), next());
  }
  return lp;
}

}  // namespace sepcs
