#include <doctest.h>

#include "mwcut/mesh.hpp"
#include "mwcut/rng.hpp"

using namespace mwcut;

TEST_CASE("mesh structure counts") {
  for (int M : {1, 2, 3, 5}) {
    auto mesh = make_mesh<double>(M);
    CHECK(mesh.node_count == (M + 1) * (M + 2) / 2);
    CHECK(mesh.face_count == M * M);
    CHECK(static_cast<int>(mesh.edges.size()) == 3 * M * (M + 1) / 2);
    // Every primal edge crossed by exactly one dual edge, endpoints valid.
    for (const auto& e : mesh.edges) {
      CHECK(e.dual_u >= 0);
      CHECK(e.dual_u < mesh.face_count);
      CHECK(e.dual_v >= 0);
      CHECK(e.dual_v < mesh.dual_count());
      // The constant coordinate really is constant and the others move by 1.
      const auto& ca = mesh.node_coords[static_cast<size_t>(e.a)];
      const auto& cb = mesh.node_coords[static_cast<size_t>(e.b)];
      CHECK(ca[static_cast<size_t>(e.const_coord)] == cb[static_cast<size_t>(e.const_coord)]);
    }
  }
}

TEST_CASE("uniform weights: formula equals brute force") {
  // For the all-terminal triangle every 3-way cut removes all edges.
  auto mesh = make_mesh<double>(1);
  mesh.weights.assign(mesh.edges.size(), 1.0);
  auto witness = planar_dual_min_3cut(mesh);
  CHECK(witness.value == doctest::Approx(3.0));
  auto [bf, lab] = brute_force_min_cut(mesh_to_graph(mesh));
  CHECK(bf == doctest::Approx(witness.value));

  auto mesh2 = make_mesh<double>(2);
  mesh2.weights.assign(mesh2.edges.size(), 1.0);
  auto witness2 = planar_dual_min_3cut(mesh2);
  auto [bf2, lab2] = brute_force_min_cut(mesh_to_graph(mesh2));
  CHECK(witness2.value == doctest::Approx(bf2));
}

TEST_CASE("random weighted meshes: dual formula equals brute force at M <= 2") {
  RngState rng(17);
  for (int it = 0; it < 40; ++it) {
    int M = 1 + static_cast<int>(rng.next_below(2));
    auto mesh = make_mesh<double>(M);
    for (auto& w : mesh.weights) w = rng.uniform() * 2.0;
    auto witness = planar_dual_min_3cut(mesh);
    auto [bf, lab] = brute_force_min_cut(mesh_to_graph(mesh));
    CHECK(witness.value == doctest::Approx(bf).epsilon(1e-9));
  }
}

TEST_CASE("rational mode is exact") {
  auto mesh = make_mesh<Rational>(2);
  for (size_t e = 0; e < mesh.weights.size(); ++e) mesh.weights[e] = Rational(static_cast<long long>(e % 3 + 1), 3);
  auto witness = planar_dual_min_3cut(mesh);
  auto [bf, lab] = brute_force_min_cut(mesh_to_graph(mesh));
  CHECK(witness.value == bf);
}

TEST_CASE("negative weights are rejected") {
  auto mesh = make_mesh<double>(2);
  mesh.weights[0] = -1.0;
  CHECK_THROWS_WITH_AS(planar_dual_min_3cut(mesh), doctest::Contains("NegativeWeight"), Error);
}
