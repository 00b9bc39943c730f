#include "mwcut/search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace mwcut {

namespace {

long long ipow(long long base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// Probability that a box-q slice has not captured by level z:
// 1 - F_box(q, z) with F_box(z) = clamp(N z - q, 0, 1).
double box_survival(int q, double z, int N) {
  double f = N * z - q;
  if (f <= 0.0) return 1.0;
  if (f >= 1.0) return 0.0;
  return 1.0 - f;
}

bool in_box_interior(int q, double z, int N) {
  return z * N > q && z * N < q + 1;
}

}  // namespace

std::vector<CellId> enumerate_cells(int k, int N, bool sorted_tail) {
  std::vector<CellId> cells;
  std::vector<int> a(static_cast<size_t>(k), 0);
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == k) {
      CellId cell{a};
      if (cell_admissible(cell, N)) cells.push_back(cell);
      return;
    }
    int lo = (sorted_tail && pos >= 3) ? a[static_cast<size_t>(pos - 1)] : 0;
    for (int v = lo; v < N; ++v) {
      a[static_cast<size_t>(pos)] = v;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
  return cells;
}

double discrete_cell_coefficient(const DiscreteSparc& q, const CellId& a, int k, int N) {
  std::vector<int> perm(static_cast<size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  double total = 0.0;
  long count = 0;
  do {
    // Walk the slice positions; a slice whose box lies strictly below the
    // cell's box in its terminal's coordinate captures the whole cell.
    bool captured = false;
    for (int pos = 0; pos < k - 1 && !captured; ++pos) {
      int t = perm[static_cast<size_t>(pos)];
      int qm = q.q[static_cast<size_t>(pos)];
      if ((t == 0 || t == 1) && qm == a.a[static_cast<size_t>(t)]) total += N;
      if (qm < a.a[static_cast<size_t>(t)]) captured = true;
    }
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total / static_cast<double>(count);
}

double discrete_point_density(const DiscreteDistribution& dist, const SimplexPoint<double>& x,
                              const Alignment& al,
                              const std::optional<std::vector<int>>& fixed_order) {
  dist.validate();
  const int k = dist.k;
  const int N = dist.N;
  if (x.k() != k) throw Error("DimensionMismatch", "point dimension != k");

  auto density_for_order = [&](const DiscreteSparc& q, const std::vector<int>& order) {
    double d = 0.0;
    double prod = 1.0;
    for (int pos = 0; pos < k - 1 && prod > 0.0; ++pos) {
      int t = order[static_cast<size_t>(pos)];
      int qm = q.q[static_cast<size_t>(pos)];
      if ((t == al.i || t == al.j) && in_box_interior(qm, x.coords[t], N)) d += prod * N;
      prod *= box_survival(qm, x.coords[t], N);
    }
    return d;
  };

  double total = 0.0;
  for (const auto& [q, p] : dist.entries) {
    if (p == 0.0) continue;
    if (fixed_order) {
      total += p * density_for_order(q, *fixed_order);
    } else {
      std::vector<int> perm(static_cast<size_t>(k));
      std::iota(perm.begin(), perm.end(), 0);
      double sum = 0.0;
      long count = 0;
      do {
        sum += density_for_order(q, perm);
        ++count;
      } while (std::next_permutation(perm.begin(), perm.end()));
      total += p * sum / static_cast<double>(count);
    }
  }
  return total;
}

LpProblem build_discrete_lp(int k, int N) {
  if (k < 3) throw Error("DomainError", "search needs k >= 3");
  long long n_sparcs = ipow(N, k - 1);
  if (n_sparcs > 10000) throw Error("TooLarge", "more than 1e4 discrete sparcs");
  std::vector<CellId> cells = enumerate_cells(k, N, /*sorted_tail=*/true);
  if (static_cast<long long>(cells.size()) > 20000)
    throw Error("TooLarge", "more than 2e4 cell constraints");

  // Sparc q enumerated lexicographically; variable tau is the last one.
  std::vector<DiscreteSparc> sparcs;
  sparcs.reserve(static_cast<size_t>(n_sparcs));
  std::vector<int> q(static_cast<size_t>(k - 1), 0);
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == k - 1) {
      sparcs.push_back(DiscreteSparc{q});
      return;
    }
    for (int v = 0; v < N; ++v) {
      q[static_cast<size_t>(pos)] = v;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);

  LpProblem lp;
  for (const auto& sp : sparcs) {
    std::string name = "x";
    for (int v : sp.q) name += "_" + std::to_string(v);
    lp.add_variable(0.0, std::numeric_limits<double>::infinity(), name);
  }
  int tau = lp.add_variable(0.0, std::numeric_limits<double>::infinity(), "tau");
  lp.add_objective_term(tau, 1.0);

  std::vector<std::pair<int, double>> prob_row;
  for (size_t s = 0; s < sparcs.size(); ++s) prob_row.push_back({static_cast<int>(s), 1.0});
  lp.add_constraint(std::move(prob_row), Sense::Equal, 1.0);

  for (const CellId& cell : cells) {
    std::vector<std::pair<int, double>> row;
    for (size_t s = 0; s < sparcs.size(); ++s) {
      double coef = discrete_cell_coefficient(sparcs[s], cell, k, N);
      if (coef != 0.0) row.push_back({static_cast<int>(s), coef});
    }
    row.push_back({tau, -1.0});
    lp.add_constraint(std::move(row), Sense::LessEqual, 0.0);
  }
  return lp;
}

DiscreteDistribution solve_discrete_search(int k, int N) {
  LpProblem lp = build_discrete_lp(k, N);
  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal)
    throw Error("LpFailed", std::string("discrete search LP status ") + to_string(sol.status));

  DiscreteDistribution dist;
  dist.k = k;
  dist.N = N;
  dist.bound = sol.objective_value;

  std::vector<int> q(static_cast<size_t>(k - 1), 0);
  int var = 0;
  double kept = 0.0;
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == k - 1) {
      double p = sol.values(var++);
      if (p > 1e-9) {
        dist.entries.push_back({DiscreteSparc{q}, p});
        kept += p;
      }
      return;
    }
    for (int v = 0; v < N; ++v) {
      q[static_cast<size_t>(pos)] = v;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
  for (auto& [sparc, p] : dist.entries) p /= kept;
  dist.validate();
  return dist;
}

SchemeConfig reconstruct_scheme(const DiscreteDistribution& dist) {
  dist.validate();
  return make_discrete(dist);
}

LpProblem build_mesh_lp(int M) {
  if (M > 10) throw Error("TooLarge", "in-house mesh LP limited to M <= 10; export instead");
  MeshGraph<double> mesh = make_mesh<double>(M);
  const int E = static_cast<int>(mesh.edges.size());
  const int D = mesh.dual_count();

  LpProblem lp;
  for (int e = 0; e < E; ++e)
    lp.add_variable(0.0, std::numeric_limits<double>::infinity(),
                    "w_" + std::to_string(mesh.edges[static_cast<size_t>(e)].a) + "_" +
                        std::to_string(mesh.edges[static_cast<size_t>(e)].b));
  auto d_var = [&](int s, int y) { return E + s * D + y; };
  for (int s = 0; s < D; ++s)
    for (int y = 0; y < D; ++y)
      lp.add_variable(0.0, std::numeric_limits<double>::infinity(),
                      "d_" + std::to_string(s) + "_" + std::to_string(y));

  // Every mesh edge has length 1/M, so the total volume is sum w / M.
  for (int e = 0; e < E; ++e) lp.add_objective_term(e, 1.0 / M);

  for (int s = 0; s < D; ++s) {
    lp.add_constraint({{d_var(s, s), 1.0}}, Sense::Equal, 0.0);
    for (int e = 0; e < E; ++e) {
      int du = mesh.edges[static_cast<size_t>(e)].dual_u;
      int dv = mesh.edges[static_cast<size_t>(e)].dual_v;
      lp.add_constraint({{d_var(s, dv), 1.0}, {d_var(s, du), -1.0}, {e, -1.0}}, Sense::LessEqual,
                        0.0);
      lp.add_constraint({{d_var(s, du), 1.0}, {d_var(s, dv), -1.0}, {e, -1.0}}, Sense::LessEqual,
                        0.0);
    }
  }
  // Cut constraints: stated as >= 1, which makes the LP lower-bound every
  // 3-way cut (the two-path and three-path characterizations).
  for (int f = 0; f < mesh.face_count; ++f) {
    lp.add_constraint(
        {{d_var(f, mesh.aux(0)), 1.0}, {d_var(f, mesh.aux(1)), 1.0}, {d_var(f, mesh.aux(2)), 1.0}},
        Sense::GreaterEqual, 1.0);
  }
  for (int s = 0; s < 3; ++s) {
    int x = mesh.aux(s), y = mesh.aux((s + 1) % 3), z = mesh.aux((s + 2) % 3);
    lp.add_constraint({{d_var(x, y), 1.0}, {d_var(x, z), 1.0}}, Sense::GreaterEqual, 1.0);
  }
  return lp;
}

GapCertificate solve_mesh_lp(int M) {
  LpProblem lp = build_mesh_lp(M);
  LpSolution sol = solve_lp(lp, 2000000);
  if (sol.status != LpStatus::Optimal)
    throw Error("LpFailed", std::string("mesh LP status ") + to_string(sol.status));

  MeshGraph<double> mesh = make_mesh<double>(M);
  GapCertificate cert;
  cert.M = M;
  cert.W = sol.objective_value;
  cert.gap_lower_bound = 1.0 / cert.W;
  cert.weights.resize(mesh.edges.size());
  for (size_t e = 0; e < mesh.edges.size(); ++e)
    cert.weights[e] = std::max(0.0, sol.values(static_cast<int>(e)));
  return cert;
}

MeshGraph<double> certificate_mesh(const GapCertificate& cert) {
  MeshGraph<double> mesh = make_mesh<double>(cert.M);
  if (cert.weights.size() != mesh.edges.size())
    throw Error("BadCertificate", "weight list does not match the mesh");
  mesh.weights = cert.weights;
  return mesh;
}

}  // namespace mwcut
