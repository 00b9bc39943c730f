#include "mwcut/lp.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <cstdio>
#include <stdexcept>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "mwcut/error.hpp"

namespace mwcut {

namespace {

constexpr double kPivotTol = 1e-7;
constexpr double kCostTol = 1e-9;
constexpr double kFeasTol = 1e-7;
// Consecutive degenerate pivots tolerated before switching to Bland's rule.
constexpr int kDegenerateLimit = 100;
// Basis changes between sparse refactorizations; bounds the eta file and
// resets accumulated floating-point drift.
constexpr int kRefactorEvery = 64;

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration_limit";
  }
  return "?";
}

int LpProblem::add_variable(double lb, double ub, const std::string& name) {
  lower.push_back(lb);
  upper.push_back(ub);
  if (!name.empty() || !names.empty()) {
    names.resize(static_cast<size_t>(num_vars), "");
    names.push_back(name);
  }
  return num_vars++;
}

void LpProblem::add_constraint(std::vector<std::pair<int, double>> terms, Sense sense,
                               double rhs) {
  if (!std::isfinite(rhs)) throw Error("BadRhs", "constraint rhs must be finite");
  constraints.push_back(Constraint{std::move(terms), sense, rhs});
}

void LpProblem::add_objective_term(int var, double coef) { objective.emplace_back(var, coef); }

std::string LpProblem::var_name(int v) const {
  if (v < static_cast<int>(names.size()) && !names[static_cast<size_t>(v)].empty())
    return names[static_cast<size_t>(v)];
  return "x" + std::to_string(v);
}

namespace {

// The LP in computational standard form: min c'x, Ax = b with b >= 0 and
// x >= 0, columns ordered [structural | slack/surplus | artificial].
struct Standardized {
  int m = 0;
  int n = 0;  // all columns
  int n_struct = 0;
  int first_artificial = 0;
  std::vector<std::vector<std::pair<int, double>>> cols;  // per column: (row, value)
  std::vector<int> initial_basis;  // per row: its slack or artificial column
  Eigen::VectorXd b;
  Eigen::VectorXd cost2;  // phase-2 objective per column
};

// Product-form revised simplex: a sparse LU of the basis plus an eta file
// of recent pivots, refactorized periodically.
class RevisedSimplex {
 public:
  RevisedSimplex(const Standardized& p, long max_iterations)
      : p_(p), max_iterations_(max_iterations), x_basic_(p.m), basis_(p.initial_basis),
        in_basis_(static_cast<size_t>(p.n), 0) {
    for (int c : basis_) in_basis_[static_cast<size_t>(c)] = 1;
    refactor();
  }

  long iterations() const { return iterations_; }
  const Eigen::VectorXd& x_basic() const { return x_basic_; }
  const std::vector<int>& basis() const { return basis_; }

  enum class Outcome { Optimal, Unbounded, IterationLimit };

  // Minimizes `cost` over the allowed columns from the current basis.
  Outcome run(const Eigen::VectorXd& cost, int enter_limit) {
    bool bland = false;
    int degenerate_run = 0;
    for (;;) {
      if (iterations_ >= max_iterations_) return Outcome::IterationLimit;
      Eigen::VectorXd y = btran(basic_cost(cost));
      int q = price(cost, y, enter_limit, bland);
      if (q < 0) return Outcome::Optimal;
      Eigen::VectorXd w = ftran(column(q));
      int r = ratio_test(w, bland);
      if (r < 0) return Outcome::Unbounded;
      double step = pivot(r, q, w);
      if (step < 1e-12) {
        if (++degenerate_run > kDegenerateLimit) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
    }
  }

  double objective(const Eigen::VectorXd& cost) const {
    double total = 0.0;
    for (int r = 0; r < p_.m; ++r) total += cost(basis_[static_cast<size_t>(r)]) * x_basic_(r);
    return total;
  }

  // Exits zero-valued basic artificials after phase 1 wherever a structural
  // or slack column can replace them; rows that admit none are redundant
  // and their artificial stays pinned at zero.
  void evict_artificials() {
    for (int r = 0; r < p_.m; ++r) {
      if (basis_[static_cast<size_t>(r)] < p_.first_artificial) continue;
      Eigen::VectorXd e = Eigen::VectorXd::Zero(p_.m);
      e(r) = 1.0;
      Eigen::VectorXd row = btran(e);
      for (int c = 0; c < p_.first_artificial; ++c) {
        if (in_basis_[static_cast<size_t>(c)]) continue;
        double entry = 0.0;
        for (auto& [rr, vv] : p_.cols[static_cast<size_t>(c)]) entry += row(rr) * vv;
        if (std::abs(entry) > kPivotTol) {
          Eigen::VectorXd w = ftran(column(c));
          pivot(r, c, w);
          break;
        }
      }
    }
  }

  void final_polish() { refactor(); }

 private:
  Eigen::VectorXd column(int c) const {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(p_.m);
    for (auto& [r, val] : p_.cols[static_cast<size_t>(c)]) v(r) += val;
    return v;
  }

  Eigen::VectorXd basic_cost(const Eigen::VectorXd& cost) const {
    Eigen::VectorXd cb(p_.m);
    for (int r = 0; r < p_.m; ++r) cb(r) = cost(basis_[static_cast<size_t>(r)]);
    return cb;
  }

  void refactor() {
    std::vector<Eigen::Triplet<double>> trip;
    for (int r = 0; r < p_.m; ++r)
      for (auto& [row, val] : p_.cols[static_cast<size_t>(basis_[static_cast<size_t>(r)])])
        trip.emplace_back(row, r, val);
    Eigen::SparseMatrix<double> B(p_.m, p_.m);
    B.setFromTriplets(trip.begin(), trip.end());
    lu_.compute(B);
    if (lu_.info() != Eigen::Success) throw Error("SingularBasis", "basis factorization failed");
    etas_.clear();
    x_basic_ = lu_.solve(p_.b);
  }

  struct Eta {
    int row;
    Eigen::VectorXd w;
  };

  static void apply_eta(const Eta& e, Eigen::VectorXd& x) {
    double xr = x(e.row) / e.w(e.row);
    x -= xr * e.w;
    x(e.row) = xr;
  }

  static void apply_eta_transposed(const Eta& e, Eigen::VectorXd& y) {
    double yr = (y(e.row) - e.w.dot(y) + e.w(e.row) * y(e.row)) / e.w(e.row);
    y(e.row) = yr;
  }

  Eigen::VectorXd ftran(const Eigen::VectorXd& v) const {
    Eigen::VectorXd x = lu_.solve(v);
    for (const Eta& e : etas_) apply_eta(e, x);
    return x;
  }

  Eigen::VectorXd btran(const Eigen::VectorXd& v) const {
    Eigen::VectorXd y = v;
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) apply_eta_transposed(*it, y);
    return lu_.adjoint().solve(y);
  }

  int price(const Eigen::VectorXd& cost, const Eigen::VectorXd& y, int limit, bool bland) const {
    int best = -1;
    double best_val = -kCostTol;
    for (int c = 0; c < limit; ++c) {
      if (in_basis_[static_cast<size_t>(c)]) continue;
      double d = cost(c);
      for (auto& [r, v] : p_.cols[static_cast<size_t>(c)]) d -= y(r) * v;
      if (d < -kCostTol) {
        if (bland) return c;
        if (d < best_val) {
          best_val = d;
          best = c;
        }
      }
    }
    return best;
  }

  // Zero-valued basic artificials leave first (any nonzero pivot, step 0),
  // keeping them pinned at zero through phase 2. Otherwise the usual
  // minimum-ratio rule; Bland ties on the smallest basic index, default
  // ties on the largest pivot element.
  int ratio_test(const Eigen::VectorXd& w, bool bland) const {
    for (int r = 0; r < p_.m; ++r)
      if (basis_[static_cast<size_t>(r)] >= p_.first_artificial &&
          std::abs(x_basic_(r)) <= 1e-11 && std::abs(w(r)) > kPivotTol)
        return r;
    int best = -1;
    double best_ratio = 0.0;
    for (int r = 0; r < p_.m; ++r) {
      double wr = w(r);
      if (wr <= kPivotTol) continue;
      double ratio = std::max(0.0, x_basic_(r)) / wr;
      if (best >= 0 && ratio > best_ratio + 1e-9) continue;
      if (best < 0 || ratio < best_ratio - 1e-9) {
        best = r;
        best_ratio = ratio;
        continue;
      }
      if (bland) {
        if (basis_[static_cast<size_t>(r)] < basis_[static_cast<size_t>(best)]) best = r;
      } else if (wr > w(best)) {
        best = r;
      }
      best_ratio = std::min(best_ratio, ratio);
    }
    return best;
  }

  double pivot(int r, int q, const Eigen::VectorXd& w) {
    double step = std::max(0.0, x_basic_(r)) / w(r);
    x_basic_ -= step * w;
    x_basic_(r) = step;
    in_basis_[static_cast<size_t>(basis_[static_cast<size_t>(r)])] = 0;
    in_basis_[static_cast<size_t>(q)] = 1;
    basis_[static_cast<size_t>(r)] = q;
    etas_.push_back(Eta{r, w});
    ++iterations_;
    if (static_cast<int>(etas_.size()) >= kRefactorEvery) refactor();
    return step;
  }

  const Standardized& p_;
  long max_iterations_;
  long iterations_ = 0;
  Eigen::VectorXd x_basic_;
  std::vector<int> basis_;
  std::vector<char> in_basis_;
  // mutable: adjoint() is a non-const accessor in Eigen's SparseLU
  mutable Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
  std::vector<Eta> etas_;
};

Standardized standardize(const LpProblem& p) {
  const int n = p.num_vars;
  for (int v = 0; v < n; ++v) {
    if (!std::isfinite(p.lower[static_cast<size_t>(v)]))
      throw Error("BadBound", "lower bounds must be finite");
  }

  // Shift x = lb + x' and materialize finite upper bounds as rows.
  std::vector<LpProblem::Constraint> rows = p.constraints;
  for (int v = 0; v < n; ++v) {
    double ub = p.upper[static_cast<size_t>(v)];
    if (std::isfinite(ub)) rows.push_back({{{v, 1.0}}, Sense::LessEqual, ub});
  }

  const int m = static_cast<int>(rows.size());
  Standardized s;
  s.m = m;
  s.n_struct = n;
  s.b.resize(m);

  int n_slack = 0, n_art = 0;
  std::vector<Sense> sense(static_cast<size_t>(m));
  std::vector<int> row_sign(static_cast<size_t>(m), 1);
  for (int r = 0; r < m; ++r) {
    double b = rows[static_cast<size_t>(r)].rhs;
    for (auto& [v, c] : rows[static_cast<size_t>(r)].terms)
      b -= c * p.lower[static_cast<size_t>(v)];
    Sense sn = rows[static_cast<size_t>(r)].sense;
    if (b < 0) {
      row_sign[static_cast<size_t>(r)] = -1;
      b = -b;
      if (sn == Sense::LessEqual)
        sn = Sense::GreaterEqual;
      else if (sn == Sense::GreaterEqual)
        sn = Sense::LessEqual;
    }
    s.b(r) = b;
    sense[static_cast<size_t>(r)] = sn;
    if (sn != Sense::Equal) ++n_slack;
    if (sn == Sense::Equal || sn == Sense::GreaterEqual) ++n_art;
  }

  s.n = n + n_slack + n_art;
  s.first_artificial = n + n_slack;
  s.cols.assign(static_cast<size_t>(s.n), {});
  for (int r = 0; r < m; ++r) {
    double sg = row_sign[static_cast<size_t>(r)];
    for (auto& [v, c] : rows[static_cast<size_t>(r)].terms)
      s.cols[static_cast<size_t>(v)].push_back({r, sg * c});
  }
  // Merge duplicate structural entries per column.
  for (int c = 0; c < n; ++c) {
    auto& col = s.cols[static_cast<size_t>(c)];
    std::sort(col.begin(), col.end());
    std::vector<std::pair<int, double>> merged;
    for (auto& [r, v] : col) {
      if (!merged.empty() && merged.back().first == r)
        merged.back().second += v;
      else
        merged.push_back({r, v});
    }
    col = std::move(merged);
  }
  int slack_at = n, art_at = s.first_artificial;
  s.initial_basis.assign(static_cast<size_t>(m), -1);
  for (int r = 0; r < m; ++r) {
    switch (sense[static_cast<size_t>(r)]) {
      case Sense::LessEqual:
        s.initial_basis[static_cast<size_t>(r)] = slack_at;
        s.cols[static_cast<size_t>(slack_at++)].push_back({r, 1.0});
        break;
      case Sense::GreaterEqual:
        s.cols[static_cast<size_t>(slack_at++)].push_back({r, -1.0});
        s.initial_basis[static_cast<size_t>(r)] = art_at;
        s.cols[static_cast<size_t>(art_at++)].push_back({r, 1.0});
        break;
      case Sense::Equal:
        s.initial_basis[static_cast<size_t>(r)] = art_at;
        s.cols[static_cast<size_t>(art_at++)].push_back({r, 1.0});
        break;
    }
  }

  s.cost2.setZero(s.n);
  double obj_sign = p.maximize ? -1.0 : 1.0;
  for (auto& [v, c] : p.objective) s.cost2(v) += obj_sign * c;
  return s;
}

}  // namespace

LpSolution solve_lp(const LpProblem& p, long max_iterations) {
  Standardized s = standardize(p);
  RevisedSimplex simplex(s, max_iterations);
  LpSolution sol;

  if (s.first_artificial < s.n) {
    Eigen::VectorXd cost1 = Eigen::VectorXd::Zero(s.n);
    for (int c = s.first_artificial; c < s.n; ++c) cost1(c) = 1.0;
    auto r1 = simplex.run(cost1, s.n);
    sol.iterations = simplex.iterations();
    if (r1 == RevisedSimplex::Outcome::IterationLimit) {
      sol.status = LpStatus::IterationLimit;
      return sol;
    }
    if (simplex.objective(cost1) > kFeasTol) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    simplex.evict_artificials();
  }

  auto r2 = simplex.run(s.cost2, s.first_artificial);
  sol.iterations = simplex.iterations();
  if (r2 == RevisedSimplex::Outcome::IterationLimit) {
    sol.status = LpStatus::IterationLimit;
    return sol;
  }
  if (r2 == RevisedSimplex::Outcome::Unbounded) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }

  // Recompute the basic solution from a fresh factorization so the answer
  // carries no pivot-to-pivot drift.
  simplex.final_polish();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(p.num_vars);
  for (int r = 0; r < s.m; ++r) {
    int c = simplex.basis()[static_cast<size_t>(r)];
    if (c < p.num_vars) x(c) = simplex.x_basic()(r);
  }
  for (int v = 0; v < p.num_vars; ++v) {
    x(v) += p.lower[static_cast<size_t>(v)];
    if (x(v) < p.lower[static_cast<size_t>(v)] &&
        x(v) > p.lower[static_cast<size_t>(v)] - 1e-9)
      x(v) = p.lower[static_cast<size_t>(v)];  // scrub factorization dust
  }

  sol.status = LpStatus::Optimal;
  sol.values = x;
  double obj = 0.0;
  for (auto& [v, c] : p.objective) obj += c * x(v);
  sol.objective_value = obj;
  return sol;
}

LpVerifyReport verify_solution(const LpProblem& p, const LpSolution& s) {
  if (s.status != LpStatus::Optimal) throw Error("NotOptimal", "verify needs an optimal solution");
  LpVerifyReport rep;
  for (const auto& con : p.constraints) {
    double lhs = 0.0;
    for (auto& [v, c] : con.terms) lhs += c * s.values(v);
    double viol = 0.0;
    switch (con.sense) {
      case Sense::LessEqual: viol = lhs - con.rhs; break;
      case Sense::GreaterEqual: viol = con.rhs - lhs; break;
      case Sense::Equal: viol = std::abs(lhs - con.rhs); break;
    }
    rep.max_constraint_residual = std::max(rep.max_constraint_residual, viol);
  }
  for (int v = 0; v < p.num_vars; ++v) {
    rep.max_bound_violation =
        std::max(rep.max_bound_violation, p.lower[static_cast<size_t>(v)] - s.values(v));
    if (std::isfinite(p.upper[static_cast<size_t>(v)]))
      rep.max_bound_violation =
          std::max(rep.max_bound_violation, s.values(v) - p.upper[static_cast<size_t>(v)]);
  }
  return rep;
}

void write_lp_format(const LpProblem& p, std::ostream& os, const std::string& problem_name) {
  auto term_str = [&](const std::vector<std::pair<int, double>>& terms) {
    std::string out;
    bool first = true;
    for (auto& [v, c] : terms) {
      if (c == 0.0) continue;
      double a = c;
      if (first) {
        if (a < 0) {
          out += "- ";
          a = -a;
        }
        first = false;
      } else {
        out += (a < 0) ? " - " : " + ";
        if (a < 0) a = -a;
      }
      out += format_double(a) + " " + p.var_name(v);
    }
    if (first) out = "0 " + p.var_name(0);
    return out;
  };

  os << "\\Problem " << problem_name << "\n";
  os << (p.maximize ? "Maximize\n" : "Minimize\n");
  os << " obj: " << term_str(p.objective) << "\n";
  os << "Subject To\n";
  for (size_t i = 0; i < p.constraints.size(); ++i) {
    const auto& con = p.constraints[i];
    const char* rel = con.sense == Sense::LessEqual ? "<=" : con.sense == Sense::Equal ? "=" : ">=";
    os << " c" << i << ": " << term_str(con.terms) << " " << rel << " " << format_double(con.rhs)
       << "\n";
  }
  os << "Bounds\n";
  for (int v = 0; v < p.num_vars; ++v) {
    double lb = p.lower[static_cast<size_t>(v)];
    double ub = p.upper[static_cast<size_t>(v)];
    if (std::isfinite(ub))
      os << " " << format_double(lb) << " <= " << p.var_name(v) << " <= " << format_double(ub)
         << "\n";
    else if (lb != 0.0)
      os << " " << p.var_name(v) << " >= " << format_double(lb) << "\n";
  }
  os << "End\n";
}

}  // namespace mwcut
