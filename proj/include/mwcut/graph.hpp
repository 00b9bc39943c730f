#ifndef MWCUT_GRAPH_HPP_
#define MWCUT_GRAPH_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "mwcut/error.hpp"
#include "mwcut/rational.hpp"

namespace mwcut {

/// Undirected graph with nonnegative edge weights and k distinguished
/// terminals. Weight is double or Rational depending on the numeric mode.
template <class Weight>
struct WeightedGraph {
  struct Edge {
    int u = 0;
    int v = 0;
    Weight weight{};
  };

  int k = 0;
  int node_count = 0;
  std::vector<int> terminals;
  std::vector<Edge> edges;

  void validate() const {
    if (k < 2 || static_cast<int>(terminals.size()) != k)
      throw Error("BadGraph", "need k >= 2 distinct terminals");
    std::vector<int> t = terminals;
    std::sort(t.begin(), t.end());
    if (std::adjacent_find(t.begin(), t.end()) != t.end())
      throw Error("BadGraph", "terminals must be distinct");
    for (int id : terminals)
      if (id < 0 || id >= node_count) throw Error("BadGraph", "terminal id out of range");
    for (const Edge& e : edges) {
      if (e.u == e.v) throw Error("BadGraph", "self loop");
      if (e.u < 0 || e.u >= node_count || e.v < 0 || e.v >= node_count)
        throw Error("BadGraph", "edge endpoint out of range");
      if (e.weight < Weight(0)) throw Error("BadGraph", "negative edge weight");
    }
  }

  /// Index of the terminal occupying node id, or -1.
  int terminal_index(int node) const {
    for (int i = 0; i < k; ++i)
      if (terminals[static_cast<size_t>(i)] == node) return i;
    return -1;
  }
};

/// A k-way cut given as a per-node terminal assignment; terminal nodes must
/// carry their own index.
struct Labeling {
  std::vector<int> label;
};

template <class Weight>
void check_labeling(const WeightedGraph<Weight>& g, const Labeling& lab) {
  if (static_cast<int>(lab.label.size()) != g.node_count)
    throw Error("InvalidLabeling", "label vector size mismatch");
  for (int i = 0; i < g.k; ++i)
    if (lab.label[static_cast<size_t>(g.terminals[static_cast<size_t>(i)])] != i)
      throw Error("InvalidLabeling", "terminal " + std::to_string(i) + " mislabeled");
  for (int v : lab.label)
    if (v < 0 || v >= g.k) throw Error("InvalidLabeling", "label out of range");
}

/// Total weight of bichromatic edges.
template <class Weight>
Weight cut_cost(const WeightedGraph<Weight>& g, const Labeling& lab) {
  check_labeling(g, lab);
  Weight total(0);
  for (const auto& e : g.edges)
    if (lab.label[static_cast<size_t>(e.u)] != lab.label[static_cast<size_t>(e.v)])
      total += e.weight;
  return total;
}

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[static_cast<size_t>(x)] != x) {
      parent_[static_cast<size_t>(x)] = parent_[static_cast<size_t>(parent_[static_cast<size_t>(x)])];
      x = parent_[static_cast<size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent_[static_cast<size_t>(find(a))] = find(b); }

 private:
  std::vector<int> parent_;
};

}  // namespace detail

/// True iff removing the given edge ids disconnects every terminal pair.
template <class Weight>
bool is_multiway_cut(const WeightedGraph<Weight>& g, const std::vector<int>& edge_subset) {
  std::vector<char> removed(g.edges.size(), 0);
  for (int id : edge_subset) {
    if (id < 0 || id >= static_cast<int>(g.edges.size()))
      throw Error("UnknownEdge", "edge id " + std::to_string(id));
    removed[static_cast<size_t>(id)] = 1;
  }
  detail::UnionFind uf(g.node_count);
  for (size_t i = 0; i < g.edges.size(); ++i)
    if (!removed[i]) uf.unite(g.edges[i].u, g.edges[i].v);
  for (int a = 0; a < g.k; ++a)
    for (int b = a + 1; b < g.k; ++b)
      if (uf.find(g.terminals[static_cast<size_t>(a)]) ==
          uf.find(g.terminals[static_cast<size_t>(b)]))
        return false;
  return true;
}

/// Exhaustive minimum multiway cut. Ties go to the lexicographically
/// smallest label vector. Only for graphs with k^(non-terminals) <= 1e7.
template <class Weight>
std::pair<Weight, Labeling> brute_force_min_cut(const WeightedGraph<Weight>& g) {
  g.validate();
  std::vector<int> free_nodes;
  std::vector<int> fixed(static_cast<size_t>(g.node_count), -1);
  for (int i = 0; i < g.k; ++i) fixed[static_cast<size_t>(g.terminals[static_cast<size_t>(i)])] = i;
  for (int v = 0; v < g.node_count; ++v)
    if (fixed[static_cast<size_t>(v)] < 0) free_nodes.push_back(v);

  double combos = std::pow(static_cast<double>(g.k), static_cast<double>(free_nodes.size()));
  if (combos > 1e7) throw Error("TooLarge", "label space exceeds 1e7");

  Labeling lab;
  lab.label.assign(fixed.begin(), fixed.end());
  for (int v : free_nodes) lab.label[static_cast<size_t>(v)] = 0;

  Labeling best = lab;
  Weight best_cost = cut_cost(g, lab);
  auto advance = [&]() {
    for (size_t i = free_nodes.size(); i-- > 0;) {
      int v = free_nodes[i];
      if (++lab.label[static_cast<size_t>(v)] < g.k) return true;
      lab.label[static_cast<size_t>(v)] = 0;
    }
    return false;
  };
  while (advance()) {
    Weight c = cut_cost(g, lab);
    if (c < best_cost) {
      best_cost = c;
      best = lab;
    }
  }
  return {best_cost, best};
}

}  // namespace mwcut

#endif  // MWCUT_GRAPH_HPP_
