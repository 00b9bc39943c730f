#include "mwcut/instances.hpp"

#include <string>

namespace mwcut {

namespace {

// Walks one generating path over the grid and bumps the crossed edge
// weights. Legs follow grid lines because the detour distance is a grid
// multiple: i -> a along side (i,l), a -> b parallel to side (i,j), b -> j
// along side (l,j).
void rasterize_path(MeshGraph<Rational>& mesh, const GnPath& p) {
  const int M = mesh.M;
  const int l = 3 - p.i - p.j;
  std::array<int, 3> c{};
  c[static_cast<size_t>(p.i)] = M;

  auto node = [&](const std::array<int, 3>& a) { return mesh.node_id(a[0], a[1]); };
  auto step = [&](int from, int to) {
    int prev = node(c);
    c[static_cast<size_t>(from)] -= 1;
    c[static_cast<size_t>(to)] += 1;
    int id = mesh.edge_ids.at(std::minmax(prev, node(c)));
    mesh.weights[static_cast<size_t>(id)] += Rational(1);
  };

  for (int s = 0; s < p.m; ++s) step(p.i, l);      // i -> a
  for (int s = 0; s < M - p.m; ++s) step(p.i, p.j);  // a -> b
  for (int s = 0; s < p.m; ++s) step(l, p.j);      // b -> j
}

}  // namespace

LowerBoundInstance generate_gn(int N) {
  if (N < 1) throw Error("BadN", "N must be >= 1");
  LowerBoundInstance inst;
  inst.N = N;
  const int M = 3 * N;
  inst.mesh = make_mesh<Rational>(M);

  const std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
  for (auto [i, j] : pairs) {
    for (int copy = 0; copy < N; ++copy) inst.paths.push_back({i, j, 0});
    for (int m = 1; m <= 2 * N; ++m) inst.paths.push_back({i, j, m});
  }
  for (const GnPath& p : inst.paths) rasterize_path(inst.mesh, p);

  inst.graph = mesh_to_graph(inst.mesh);

  inst.embedding.points.reserve(static_cast<size_t>(inst.mesh.node_count));
  for (const auto& uvw : inst.mesh.node_coords) {
    Coords<Rational> c(3);
    for (int l = 0; l < 3; ++l) c[l] = Rational(uvw[static_cast<size_t>(l)], M);
    inst.embedding.points.push_back(make_point(std::move(c)));
  }

  inst.volume = volume(inst.graph, inst.embedding);
  if (inst.volume != Rational(11 * N + 1))
    throw Error("BadInstance", "G_N volume mismatch at N=" + std::to_string(N));
  return inst;
}

GnReport verify_gn(int N) {
  if (N > 30) throw Error("TooLarge", "verify_gn supports N <= 30");
  LowerBoundInstance inst = generate_gn(N);

  GnReport rep;
  rep.volume = inst.volume;
  auto witness = planar_dual_min_3cut(inst.mesh);
  rep.min_cut = witness.value;
  rep.ratio = rep.min_cut / rep.volume;

  if (rep.min_cut != Rational(12 * N))
    throw Error("BadInstance", "G_N min cut mismatch at N=" + std::to_string(N));
  if (N == 1) {
    auto [bf, lab] = brute_force_min_cut(inst.graph);
    if (bf != rep.min_cut) throw Error("BadInstance", "brute force disagrees at N=1");
  }
  return rep;
}

}  // namespace mwcut
