#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "mwcut/lp.hpp"
#include "mwcut/rng.hpp"

using namespace mwcut;

namespace {

// Independent check: enumerate all basic points (intersections of n active
// constraints drawn from rows and bound faces), keep the feasible ones, and
// take the best objective. Only for tiny LPs.
double vertex_enumeration_min(const LpProblem& p) {
  const int n = p.num_vars;
  struct Face {
    Eigen::RowVectorXd a;
    double b;
  };
  std::vector<Face> faces;
  for (const auto& con : p.constraints) {
    Eigen::RowVectorXd a = Eigen::RowVectorXd::Zero(n);
    for (auto& [v, c] : con.terms) a(v) += c;
    faces.push_back({a, con.rhs});
  }
  for (int v = 0; v < n; ++v) {
    Eigen::RowVectorXd a = Eigen::RowVectorXd::Zero(n);
    a(v) = 1.0;
    faces.push_back({a, p.lower[static_cast<size_t>(v)]});
    if (std::isfinite(p.upper[static_cast<size_t>(v)])) faces.push_back({a, p.upper[static_cast<size_t>(v)]});
  }

  auto feasible = [&](const Eigen::VectorXd& x) {
    for (const auto& con : p.constraints) {
      double lhs = 0.0;
      for (auto& [v, c] : con.terms) lhs += c * x(v);
      if (con.sense == Sense::LessEqual && lhs > con.rhs + 1e-7) return false;
      if (con.sense == Sense::GreaterEqual && lhs < con.rhs - 1e-7) return false;
      if (con.sense == Sense::Equal && std::abs(lhs - con.rhs) > 1e-7) return false;
    }
    for (int v = 0; v < n; ++v) {
      if (x(v) < p.lower[static_cast<size_t>(v)] - 1e-9) return false;
      if (std::isfinite(p.upper[static_cast<size_t>(v)]) && x(v) > p.upper[static_cast<size_t>(v)] + 1e-9)
        return false;
    }
    return true;
  };

  double best = std::numeric_limits<double>::infinity();
  const int f = static_cast<int>(faces.size());
  std::vector<int> pick(static_cast<size_t>(n));
  auto rec = [&](auto&& self, int pos, int start) -> void {
    if (pos == n) {
      Eigen::MatrixXd A(n, n);
      Eigen::VectorXd b(n);
      for (int i = 0; i < n; ++i) {
        A.row(i) = faces[static_cast<size_t>(pick[static_cast<size_t>(i)])].a;
        b(i) = faces[static_cast<size_t>(pick[static_cast<size_t>(i)])].b;
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
      if (!lu.isInvertible()) return;
      Eigen::VectorXd x = lu.solve(b);
      if (!feasible(x)) return;
      double obj = 0.0;
      for (auto& [v, c] : p.objective) obj += c * x(v);
      best = std::min(best, obj);
      return;
    }
    for (int i = start; i < f; ++i) {
      pick[static_cast<size_t>(pos)] = i;
      self(self, pos + 1, i + 1);
    }
  };
  rec(rec, 0, 0);
  return best;
}

// Feasible-by-construction bounded random LP: constraints are satisfied at
// a random interior point, variables live in [0, ub].
LpProblem random_lp(RngState& rng) {
  LpProblem p;
  int n = 2 + static_cast<int>(rng.next_below(4));
  int m = 2 + static_cast<int>(rng.next_below(5));
  Eigen::VectorXd interior(n);
  for (int v = 0; v < n; ++v) {
    double ub = 1.0 + 4.0 * rng.uniform();
    p.add_variable(0.0, ub);
    interior(v) = ub * rng.uniform();
  }
  for (int r = 0; r < m; ++r) {
    std::vector<std::pair<int, double>> terms;
    double lhs = 0.0;
    for (int v = 0; v < n; ++v) {
      if (rng.uniform() < 0.3) continue;
      double c = -2.0 + 4.0 * rng.uniform();
      terms.push_back({v, c});
      lhs += c * interior(v);
    }
    if (terms.empty()) continue;
    double slack = rng.uniform();
    if (rng.uniform() < 0.5)
      p.add_constraint(std::move(terms), Sense::LessEqual, lhs + slack);
    else
      p.add_constraint(std::move(terms), Sense::GreaterEqual, lhs - slack);
  }
  for (int v = 0; v < n; ++v) p.add_objective_term(v, -2.0 + 4.0 * rng.uniform());
  return p;
}

}  // namespace

TEST_CASE("one-variable LP") {
  LpProblem p;
  p.add_variable();
  p.add_objective_term(0, 1.0);
  p.add_constraint({{0, 1.0}}, Sense::GreaterEqual, 3.0);
  auto sol = solve_lp(p);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective_value == doctest::Approx(3.0));
  CHECK(sol.values(0) == doctest::Approx(3.0));
}

TEST_CASE("symmetric two-variable LP") {
  LpProblem p;
  p.add_variable();
  p.add_variable();
  p.add_objective_term(0, 1.0);
  p.add_objective_term(1, 1.0);
  p.add_constraint({{0, 1.0}, {1, 1.0}}, Sense::GreaterEqual, 1.0);
  p.add_constraint({{0, 1.0}, {1, -1.0}}, Sense::Equal, 0.0);
  auto sol = solve_lp(p);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective_value == doctest::Approx(1.0));
  CHECK(sol.values(0) == doctest::Approx(0.5));
  CHECK(verify_solution(p, sol).max_constraint_residual <= 1e-7);
}

TEST_CASE("infeasible and unbounded detection") {
  LpProblem p;
  p.add_variable();
  p.add_constraint({{0, 1.0}}, Sense::GreaterEqual, 2.0);
  p.add_constraint({{0, 1.0}}, Sense::LessEqual, 1.0);
  p.add_objective_term(0, 1.0);
  CHECK(solve_lp(p).status == LpStatus::Infeasible);

  LpProblem q;
  q.add_variable();
  q.add_objective_term(0, -1.0);
  q.add_constraint({{0, 1.0}}, Sense::GreaterEqual, 0.0);
  CHECK(solve_lp(q).status == LpStatus::Unbounded);
}

TEST_CASE("solver matches vertex enumeration on random small LPs") {
  RngState rng(2024);
  int solved = 0;
  while (solved < 50) {
    LpProblem p = random_lp(rng);
    auto sol = solve_lp(p);
    REQUIRE(sol.status == LpStatus::Optimal);  // feasible and box-bounded by construction
    double oracle = vertex_enumeration_min(p);
    CHECK(sol.objective_value == doctest::Approx(oracle).epsilon(1e-6));
    auto rep = verify_solution(p, sol);
    CHECK(rep.max_constraint_residual <= 1e-7);
    CHECK(rep.max_bound_violation <= 1e-9);
    ++solved;
  }
}

TEST_CASE("row permutation leaves the objective unchanged") {
  RngState rng(99);
  for (int it = 0; it < 10; ++it) {
    LpProblem p = random_lp(rng);
    auto sol = solve_lp(p);
    REQUIRE(sol.status == LpStatus::Optimal);
    LpProblem shuffled = p;
    auto perm = rng.permutation(static_cast<int>(p.constraints.size()));
    for (size_t i = 0; i < perm.size(); ++i)
      shuffled.constraints[i] = p.constraints[static_cast<size_t>(perm[i])];
    auto sol2 = solve_lp(shuffled);
    REQUIRE(sol2.status == LpStatus::Optimal);
    CHECK(std::abs(sol.objective_value - sol2.objective_value) <= 1e-7);
  }
}

TEST_CASE("negative-control perturbation shows up in verify_solution") {
  LpProblem p;
  p.add_variable();
  p.add_variable();
  p.add_objective_term(0, 1.0);
  p.add_objective_term(1, 1.0);
  p.add_constraint({{0, 1.0}, {1, 1.0}}, Sense::Equal, 1.0);
  auto sol = solve_lp(p);
  REQUIRE(sol.status == LpStatus::Optimal);
  sol.values(0) += 1.0;
  CHECK(verify_solution(p, sol).max_constraint_residual > 0.5);
}

TEST_CASE("LP format export carries the expected sections") {
  LpProblem p;
  p.add_variable(0.0, 5.0);
  p.add_variable();
  p.add_objective_term(0, 2.0);
  p.add_objective_term(1, -1.0);
  p.add_constraint({{0, 1.0}, {1, 1.0}}, Sense::GreaterEqual, 1.0);
  std::ostringstream os;
  write_lp_format(p, os, "demo");
  std::string text = os.str();
  for (const char* section : {"\\Problem demo", "Minimize", "Subject To", "Bounds", "End"})
    CHECK(text.find(section) != std::string::npos);
  CHECK(text.find("x0") != std::string::npos);
}

TEST_CASE("determinism: identical inputs give identical iterates") {
  RngState rng(5);
  LpProblem p = random_lp(rng);
  auto a = solve_lp(p);
  auto b = solve_lp(p);
  REQUIRE(a.status == LpStatus::Optimal);
  CHECK(a.iterations == b.iterations);
  CHECK((a.values - b.values).cwiseAbs().maxCoeff() == 0.0);
}
