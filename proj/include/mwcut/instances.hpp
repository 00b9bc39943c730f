#ifndef MWCUT_INSTANCES_HPP_
#define MWCUT_INSTANCES_HPP_

#include <array>
#include <vector>

#include "mwcut/mesh.hpp"
#include "mwcut/relaxation.hpp"

namespace mwcut {

/// One generating path of the lower-bound family: runs from terminal i to
/// terminal j, detouring at distance d = m/(3N) via the opposite side.
struct GnPath {
  int i = 0;
  int j = 0;
  int m = 0;  // detour distance in grid units (d = m / (3N))
};

/// The grid instance G_N on the 1/(3N) triangular grid (k = 3): edge
/// weights count the generating paths through each grid edge, the canonical
/// embedding is the identity placement, and the volume is exactly 11N + 1.
struct LowerBoundInstance {
  int N = 0;
  MeshGraph<Rational> mesh;          // M = 3N, integer weights
  WeightedGraph<Rational> graph;
  Embedding<Rational> embedding;     // grid nodes at their own coordinates
  Rational volume{};
  std::vector<GnPath> paths;         // all 9N generating paths
};

LowerBoundInstance generate_gn(int N);

struct GnReport {
  Rational volume{};
  Rational min_cut{};
  Rational ratio{};  // min_cut / volume = 12N / (11N+1)
};

/// Exact verification: volume = 11N+1, planar-dual minimum 3-way cut = 12N
/// (cross-checked by brute force at N = 1), ratio = 12N/(11N+1).
GnReport verify_gn(int N);

}  // namespace mwcut

#endif  // MWCUT_INSTANCES_HPP_
