#ifndef MWCUT_RELAXATION_HPP_
#define MWCUT_RELAXATION_HPP_

#include <utility>
#include <vector>

#include "mwcut/graph.hpp"
#include "mwcut/lp.hpp"
#include "mwcut/simplex.hpp"

namespace mwcut {

/// Node placement in the simplex with terminal i pinned at vertex i.
template <class Scalar>
struct Embedding {
  std::vector<SimplexPoint<Scalar>> points;
};

template <class Scalar>
void check_embedding(const WeightedGraph<Scalar>& g, const Embedding<Scalar>& emb) {
  if (static_cast<int>(emb.points.size()) != g.node_count)
    throw Error("MissingPoint", "embedding does not cover every node");
  for (const auto& p : emb.points)
    if (p.k() != g.k) throw Error("DimensionMismatch", "point dimension != k");
  for (int i = 0; i < g.k; ++i) {
    const auto& p = emb.points[static_cast<size_t>(g.terminals[static_cast<size_t>(i)])];
    for (int l = 0; l < g.k; ++l)
      if (p.coords[l] != Scalar(l == i ? 1 : 0))
        throw Error("BadEmbedding", "terminal " + std::to_string(i) + " not at its vertex");
  }
}

/// vol(G) = sum over edges of cost(e) * |e| with |e| the half-L1 length.
template <class Scalar>
Scalar volume(const WeightedGraph<Scalar>& g, const Embedding<Scalar>& emb) {
  check_embedding(g, emb);
  Scalar total(0);
  for (const auto& e : g.edges)
    total += e.weight * half_l1_distance(emb.points[static_cast<size_t>(e.u)],
                                         emb.points[static_cast<size_t>(e.v)]);
  return total;
}

/// An embedded graph whose edges have been rerouted along aligned segments;
/// per parent edge the aligned pieces form a path of the same total length.
template <class Scalar>
struct AlignedInstance {
  struct AlignedEdge {
    Segment<Scalar> segment;
    Scalar weight{};
    int parent_edge = 0;
  };

  WeightedGraph<Scalar> graph;
  Embedding<Scalar> embedding;
  std::vector<SimplexPoint<Scalar>> waypoints;  // interior path nodes, bookkeeping only
  std::vector<AlignedEdge> edges;
};

/// Reroutes every embedded edge along aligned segments without changing the
/// volume. Zero-length edges contribute no segments.
template <class Scalar>
AlignedInstance<Scalar> align_embedding(const WeightedGraph<Scalar>& g,
                                        const Embedding<Scalar>& emb) {
  check_embedding(g, emb);
  AlignedInstance<Scalar> inst;
  inst.graph = g;
  inst.embedding = emb;
  for (size_t ei = 0; ei < g.edges.size(); ++ei) {
    const auto& e = g.edges[ei];
    Segment<Scalar> seg{emb.points[static_cast<size_t>(e.u)], emb.points[static_cast<size_t>(e.v)]};
    auto pieces = decompose_aligned(seg);
    for (size_t pi = 0; pi < pieces.size(); ++pi) {
      if (pi + 1 < pieces.size()) inst.waypoints.push_back(pieces[pi].b);
      inst.edges.push_back({pieces[pi], e.weight, static_cast<int>(ei)});
    }
  }
  return inst;
}

/// The geometric-embedding LP: coordinates y[v,l], projection widths
/// z[e,l] >= |y[u,l] - y[v,l]|, objective  min sum_e w_e * (1/2) sum_l z[e,l].
LpProblem build_embedding_lp(const WeightedGraph<double>& g);

/// Solves the relaxation and returns the embedding with its volume
/// (the LP objective). Throws Error("LpFailed") on non-optimal status.
std::pair<Embedding<double>, double> solve_relaxation(const WeightedGraph<double>& g);

/// Weight-preserving conversion for running the double-precision pipeline
/// on exactly constructed instances.
WeightedGraph<double> graph_to_double(const WeightedGraph<Rational>& g);
Embedding<double> embedding_to_double(const Embedding<Rational>& emb);

}  // namespace mwcut

#endif  // MWCUT_RELAXATION_HPP_
