#include "mwcut/relaxation.hpp"

#include <algorithm>
#include <string>

namespace mwcut {

LpProblem build_embedding_lp(const WeightedGraph<double>& g) {
  g.validate();
  const int k = g.k;
  const int n = g.node_count;
  const int m = static_cast<int>(g.edges.size());

  LpProblem lp;
  auto y = [&](int v, int l) { return v * k + l; };
  auto z = [&](int e, int l) { return n * k + e * k + l; };
  for (int v = 0; v < n; ++v)
    for (int l = 0; l < k; ++l) lp.add_variable(0.0, std::numeric_limits<double>::infinity(),
                                                "y_" + std::to_string(v) + "_" + std::to_string(l));
  for (int e = 0; e < m; ++e)
    for (int l = 0; l < k; ++l) lp.add_variable(0.0, std::numeric_limits<double>::infinity(),
                                                "z_" + std::to_string(e) + "_" + std::to_string(l));

  for (int v = 0; v < n; ++v) {
    std::vector<std::pair<int, double>> row;
    for (int l = 0; l < k; ++l) row.push_back({y(v, l), 1.0});
    lp.add_constraint(std::move(row), Sense::Equal, 1.0);
  }
  for (int i = 0; i < k; ++i) {
    int t = g.terminals[static_cast<size_t>(i)];
    for (int l = 0; l < k; ++l)
      lp.add_constraint({{y(t, l), 1.0}}, Sense::Equal, l == i ? 1.0 : 0.0);
  }
  for (int e = 0; e < m; ++e) {
    int u = g.edges[static_cast<size_t>(e)].u;
    int v = g.edges[static_cast<size_t>(e)].v;
    for (int l = 0; l < k; ++l) {
      lp.add_constraint({{y(u, l), 1.0}, {y(v, l), -1.0}, {z(e, l), -1.0}}, Sense::LessEqual, 0.0);
      lp.add_constraint({{y(v, l), 1.0}, {y(u, l), -1.0}, {z(e, l), -1.0}}, Sense::LessEqual, 0.0);
    }
    for (int l = 0; l < k; ++l)
      lp.add_objective_term(z(e, l), g.edges[static_cast<size_t>(e)].weight / 2.0);
  }
  return lp;
}

std::pair<Embedding<double>, double> solve_relaxation(const WeightedGraph<double>& g) {
  LpProblem lp = build_embedding_lp(g);
  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal)
    throw Error("LpFailed", std::string("relaxation LP status ") + to_string(sol.status));

  const int k = g.k;
  Embedding<double> emb;
  emb.points.reserve(static_cast<size_t>(g.node_count));
  for (int v = 0; v < g.node_count; ++v) {
    int ti = g.terminal_index(v);
    if (ti >= 0) {
      emb.points.push_back(simplex_vertex<double>(k, ti));
      continue;
    }
    Coords<double> c(k);
    double sum = 0.0;
    for (int l = 0; l < k; ++l) {
      c[l] = std::max(0.0, sol.values(v * k + l));
      sum += c[l];
    }
    c /= sum;  // scrub solver residue so the point passes membership exactly
    emb.points.push_back(make_point(std::move(c)));
  }
  return {std::move(emb), sol.objective_value};
}

WeightedGraph<double> graph_to_double(const WeightedGraph<Rational>& g) {
  WeightedGraph<double> out;
  out.k = g.k;
  out.node_count = g.node_count;
  out.terminals = g.terminals;
  for (const auto& e : g.edges) out.edges.push_back({e.u, e.v, e.weight.to_double()});
  return out;
}

Embedding<double> embedding_to_double(const Embedding<Rational>& emb) {
  Embedding<double> out;
  out.points.reserve(emb.points.size());
  for (const auto& p : emb.points) out.points.push_back(to_double(p));
  return out;
}

}  // namespace mwcut
