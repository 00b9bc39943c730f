#ifndef MWCUT_MESH_HPP_
#define MWCUT_MESH_HPP_

#include <array>
#include <limits>
#include <map>
#include <queue>
#include <utility>
#include <vector>

#include "mwcut/error.hpp"
#include "mwcut/graph.hpp"

namespace mwcut {

/// Triangular mesh over the 3-simplex with subdivision M: primal nodes at
/// the grid points whose coordinates are multiples of 1/M, primal edges
/// between nodes at half-L1 distance 1/M, and the planar dual of the mesh
/// augmented with one auxiliary node per simplex side (aux l sits beyond
/// the side x_l = 0). Every primal edge is crossed by exactly one dual
/// edge; boundary edges connect their face to the adjacent auxiliary node.
template <class Weight>
struct MeshGraph {
  struct PrimalEdge {
    int a = 0, b = 0;        // primal node ids
    int const_coord = 0;     // the coordinate that stays fixed along the edge
    int dual_u = 0, dual_v = 0;  // dual endpoints (face ids, or aux ids)
  };

  int M = 0;
  int node_count = 0;
  int face_count = 0;  // ordinary dual nodes; aux ids are face_count + l
  std::vector<PrimalEdge> edges;
  std::vector<Weight> weights;                  // parallel to edges
  std::map<std::pair<int, int>, int> edge_ids;  // sorted node pair -> edge id
  std::vector<std::array<int, 3>> node_coords;  // integer barycentric, sum M

  int dual_count() const { return face_count + 3; }
  int aux(int side) const { return face_count + side; }
  int node_id(int u, int v) const {  // w = M - u - v
    return u * (M + 1) - u * (u - 1) / 2 + v;
  }
  int corner(int terminal) const {
    if (terminal == 0) return node_id(M, 0);
    if (terminal == 1) return node_id(0, M);
    return node_id(0, 0);
  }
};

template <class Weight>
MeshGraph<Weight> make_mesh(int M) {
  if (M < 1) throw Error("BadMesh", "subdivision must be >= 1");
  MeshGraph<Weight> mesh;
  mesh.M = M;
  mesh.node_count = (M + 1) * (M + 2) / 2;
  mesh.node_coords.resize(static_cast<size_t>(mesh.node_count));
  for (int u = 0; u <= M; ++u)
    for (int v = 0; v + u <= M; ++v)
      mesh.node_coords[static_cast<size_t>(mesh.node_id(u, v))] = {u, v, M - u - v};

  // Faces: upward triangles (u,v,w sum M-1) first, then downward ones
  // (sum M+1, all coordinates >= 1).
  int n_up = M * (M + 1) / 2;
  mesh.face_count = M * M;
  auto up_id = [&](int u, int v) {  // u + v <= M-1
    return u * M - u * (u - 1) / 2 + v;
  };
  auto down_id = [&](int u, int v) {  // u,v >= 1, u + v <= M, w = M+1-u-v >= 1
    return n_up + (u - 1) * (M - 1) - (u - 1) * (u - 2) / 2 + (v - 1);
  };

  for (int u = 0; u + 1 <= M; ++u) {
    for (int v = 0; u + v <= M - 1; ++v) {
      int w = M - 1 - u - v;
      int f = up_id(u, v);
      auto add_edge = [&](int na, int nb, int cc, int other_dual) {
        typename MeshGraph<Weight>::PrimalEdge e;
        e.a = na;
        e.b = nb;
        e.const_coord = cc;
        e.dual_u = f;
        e.dual_v = other_dual;
        mesh.edge_ids[std::minmax(na, nb)] = static_cast<int>(mesh.edges.size());
        mesh.edges.push_back(e);
      };
      // Edge with constant w: between (u+1,v) and (u,v+1).
      add_edge(mesh.node_id(u + 1, v), mesh.node_id(u, v + 1), 2,
               w >= 1 ? down_id(u + 1, v + 1) : mesh.aux(2));
      // Edge with constant v: between (u+1,v) and (u,v) [w+1].
      add_edge(mesh.node_id(u + 1, v), mesh.node_id(u, v), 1,
               v >= 1 ? down_id(u + 1, v) : mesh.aux(1));
      // Edge with constant u: between (u,v+1) and (u,v) [w+1].
      add_edge(mesh.node_id(u, v + 1), mesh.node_id(u, v), 0,
               u >= 1 ? down_id(u, v + 1) : mesh.aux(0));
    }
  }
  mesh.weights.assign(mesh.edges.size(), Weight(0));
  return mesh;
}

/// The mesh as a plain weighted graph (terminals at the three corners).
template <class Weight>
WeightedGraph<Weight> mesh_to_graph(const MeshGraph<Weight>& mesh) {
  WeightedGraph<Weight> g;
  g.k = 3;
  g.node_count = mesh.node_count;
  g.terminals = {mesh.corner(0), mesh.corner(1), mesh.corner(2)};
  for (size_t i = 0; i < mesh.edges.size(); ++i)
    g.edges.push_back({mesh.edges[i].a, mesh.edges[i].b, mesh.weights[i]});
  g.validate();
  return g;
}

/// Which 3-way cut shape realized the planar-dual minimum.
template <class Weight>
struct MinCutWitness {
  Weight value{};
  bool connected = false;  // true: three paths from `center`; false: two paths from aux `center`
  int center = -1;
  std::array<std::vector<Weight>, 3> dist_from_aux;
};

namespace detail {

template <class Weight>
std::vector<Weight> dual_dijkstra(const MeshGraph<Weight>& mesh, int source) {
  const int n = mesh.dual_count();
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<size_t>(n));  // (neighbor, edge)
  for (size_t i = 0; i < mesh.edges.size(); ++i) {
    adj[static_cast<size_t>(mesh.edges[i].dual_u)].push_back({mesh.edges[i].dual_v, static_cast<int>(i)});
    adj[static_cast<size_t>(mesh.edges[i].dual_v)].push_back({mesh.edges[i].dual_u, static_cast<int>(i)});
  }
  std::vector<Weight> dist(static_cast<size_t>(n), Weight(0));
  std::vector<char> reached(static_cast<size_t>(n), 0);
  using Item = std::pair<Weight, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  heap.push({Weight(0), source});
  dist[static_cast<size_t>(source)] = Weight(0);
  std::vector<char> seen(static_cast<size_t>(n), 0);
  seen[static_cast<size_t>(source)] = 1;
  while (!heap.empty()) {
    auto [d, x] = heap.top();
    heap.pop();
    if (reached[static_cast<size_t>(x)]) continue;
    reached[static_cast<size_t>(x)] = 1;
    for (auto [y, e] : adj[static_cast<size_t>(x)]) {
      Weight nd = d + mesh.weights[static_cast<size_t>(e)];
      if (!seen[static_cast<size_t>(y)] || nd < dist[static_cast<size_t>(y)]) {
        seen[static_cast<size_t>(y)] = 1;
        dist[static_cast<size_t>(y)] = nd;
        heap.push({nd, y});
      }
    }
  }
  return dist;
}

}  // namespace detail

/// Minimum 3-way cut of the weighted mesh through the planar dual: the
/// cheaper of (a) two paths from one auxiliary node to the other two and
/// (b) three paths from an interior dual node to all auxiliary nodes.
/// Overlapping paths are summed without deduplication, which can only
/// overestimate a candidate, never undercut the true minimum.
template <class Weight>
MinCutWitness<Weight> planar_dual_min_3cut(const MeshGraph<Weight>& mesh) {
  for (const Weight& w : mesh.weights)
    if (w < Weight(0)) throw Error("NegativeWeight", "dual shortest paths need w >= 0");

  MinCutWitness<Weight> best;
  for (int s = 0; s < 3; ++s) best.dist_from_aux[static_cast<size_t>(s)] = detail::dual_dijkstra(mesh, mesh.aux(s));
  const auto& dist = best.dist_from_aux;

  bool have = false;
  auto consider = [&](Weight v, bool connected, int center) {
    if (!have || v < best.value) {
      have = true;
      best.value = v;
      best.connected = connected;
      best.center = center;
    }
  };
  for (int x = 0; x < 3; ++x) {
    int y = (x + 1) % 3, z = (x + 2) % 3;
    consider(dist[static_cast<size_t>(x)][static_cast<size_t>(mesh.aux(y))] +
                 dist[static_cast<size_t>(x)][static_cast<size_t>(mesh.aux(z))],
             false, x);
  }
  for (int f = 0; f < mesh.face_count; ++f) {
    Weight v = dist[0][static_cast<size_t>(f)] + dist[1][static_cast<size_t>(f)] +
               dist[2][static_cast<size_t>(f)];
    consider(v, true, f);
  }
  return best;
}

}  // namespace mwcut

#endif  // MWCUT_MESH_HPP_
