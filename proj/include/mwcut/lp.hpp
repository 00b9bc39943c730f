#ifndef MWCUT_LP_HPP_
#define MWCUT_LP_HPP_

#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace mwcut {

enum class Sense { LessEqual, Equal, GreaterEqual };
enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

const char* to_string(LpStatus s);

/// A dense-ish linear program: named variables with [lb, ub) bounds
/// (defaults [0, +inf)), sparse constraint rows, and a linear objective.
struct LpProblem {
  struct Constraint {
    std::vector<std::pair<int, double>> terms;  // (variable, coefficient)
    Sense sense = Sense::LessEqual;
    double rhs = 0.0;
  };

  int num_vars = 0;
  bool maximize = false;
  std::vector<std::pair<int, double>> objective;
  std::vector<Constraint> constraints;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::string> names;  // optional; empty means x0..x{n-1}

  int add_variable(double lb = 0.0, double ub = std::numeric_limits<double>::infinity(),
                   const std::string& name = "");
  void add_constraint(std::vector<std::pair<int, double>> terms, Sense sense, double rhs);
  void add_objective_term(int var, double coef);

  std::string var_name(int v) const;
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double objective_value = 0.0;
  Eigen::VectorXd values;
  long iterations = 0;
};

/// Two-phase primal simplex on a dense tableau. Deterministic: Dantzig
/// pricing with index tie-breaks, switching to Bland's rule after a run of
/// degenerate pivots so cycling cannot occur.
LpSolution solve_lp(const LpProblem& p, long max_iterations = 500000);

struct LpVerifyReport {
  double max_constraint_residual = 0.0;
  double max_bound_violation = 0.0;
};

/// Residuals of s against p's constraints and bounds; used by tests and by
/// the solution checks sprinkled through the pipelines.
LpVerifyReport verify_solution(const LpProblem& p, const LpSolution& s);

/// Writes p in CPLEX LP text format so instances beyond the in-house
/// solver's comfort zone can be handed to an external solver.
void write_lp_format(const LpProblem& p, std::ostream& os, const std::string& problem_name);

}  // namespace mwcut

#endif  // MWCUT_LP_HPP_
