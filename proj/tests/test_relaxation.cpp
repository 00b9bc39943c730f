#include <doctest.h>

#include <sstream>

#include "mwcut/instances.hpp"
#include "mwcut/io.hpp"
#include "mwcut/relaxation.hpp"
#include "mwcut/rng.hpp"

using namespace mwcut;

namespace {

WeightedGraph<double> star_k13() {
  WeightedGraph<double> g;
  g.k = 3;
  g.node_count = 4;
  g.terminals = {0, 1, 2};
  g.edges = {{0, 3, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}};
  return g;
}

WeightedGraph<double> random_graph(int extra, RngState& rng) {
  WeightedGraph<double> g;
  g.k = 3;
  g.node_count = 3 + extra;
  g.terminals = {0, 1, 2};
  for (int u = 0; u < g.node_count; ++u)
    for (int v = u + 1; v < g.node_count; ++v)
      if (rng.uniform() < 0.6) g.edges.push_back({u, v, 0.2 + rng.uniform() * 2.0});
  return g;
}

}  // namespace

TEST_CASE("star K_{1,3} relaxes to 2") {
  auto [emb, vol] = solve_relaxation(star_k13());
  CHECK(vol == doctest::Approx(2.0));
  CHECK(volume(star_k13(), emb) == doctest::Approx(vol).epsilon(1e-7));
}

TEST_CASE("terminal triangle relaxes to 3") {
  WeightedGraph<double> tri;
  tri.k = 3;
  tri.node_count = 3;
  tri.terminals = {0, 1, 2};
  tri.edges = {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}};
  auto [emb, vol] = solve_relaxation(tri);
  CHECK(vol == doctest::Approx(3.0));
}

TEST_CASE("zero-weight graph relaxes to 0") {
  auto g = star_k13();
  for (auto& e : g.edges) e.weight = 0.0;
  auto [emb, vol] = solve_relaxation(g);
  CHECK(vol == doctest::Approx(0.0));
}

TEST_CASE("G_1 with free nodes relaxes to its canonical volume 12") {
  auto inst = generate_gn(1);
  auto [emb, vol] = solve_relaxation(graph_to_double(inst.graph));
  CHECK(vol == doctest::Approx(12.0).epsilon(1e-7));
}

TEST_CASE("relaxation lower-bounds the minimum cut; vertex placements are feasible") {
  RngState rng(21);
  for (int it = 0; it < 5; ++it) {
    auto g = random_graph(3, rng);
    auto [emb, vol] = solve_relaxation(g);
    auto [best, lab] = brute_force_min_cut(g);
    CHECK(vol <= best + 1e-6);
    // Mapping an optimal cut to vertex placements realizes its cost.
    Embedding<double> integral;
    for (int v = 0; v < g.node_count; ++v)
      integral.points.push_back(simplex_vertex<double>(3, lab.label[static_cast<size_t>(v)]));
    CHECK(volume(g, integral) == doctest::Approx(best));
  }
}

TEST_CASE("canonical G_N embedding volume is exact in rational mode") {
  auto inst = generate_gn(3);
  CHECK(volume(inst.graph, inst.embedding) == Rational(34));
}

TEST_CASE("align_embedding preserves volume and yields aligned pieces") {
  RngState rng(5);
  auto g = random_graph(2, rng);
  auto [emb, vol] = solve_relaxation(g);
  auto inst = align_embedding(g, emb);
  double total = 0.0;
  for (const auto& ae : inst.edges) {
    CHECK(alignment_of(ae.segment).has_value());
    total += ae.weight * segment_length(ae.segment);
  }
  CHECK(total == doctest::Approx(volume(g, emb)).epsilon(1e-9));
  CHECK(static_cast<int>(inst.edges.size()) <= (g.k - 1) * static_cast<int>(g.edges.size()));

  // Already-aligned embedding: one segment per positive-length edge.
  auto star = star_k13();
  Embedding<double> corner;
  corner.points = {simplex_vertex<double>(3, 0), simplex_vertex<double>(3, 1),
                   simplex_vertex<double>(3, 2), simplex_vertex<double>(3, 0)};
  auto star_inst = align_embedding(star, corner);
  CHECK(star_inst.edges.size() == 2);  // the zero-length edge contributes none
}

TEST_CASE("align_embedding is exact in rational mode") {
  auto inst = generate_gn(1);
  auto aligned = align_embedding(inst.graph, inst.embedding);
  Rational total(0);
  for (const auto& ae : aligned.edges) total += ae.weight * segment_length(ae.segment);
  CHECK(total == Rational(12));
}

TEST_CASE("embedding file round-trip") {
  auto [emb, vol] = solve_relaxation(star_k13());
  std::ostringstream os;
  save_embedding(emb, os);
  std::istringstream is(os.str());
  auto emb2 = load_embedding(is);
  REQUIRE(emb2.points.size() == emb.points.size());
  for (size_t v = 0; v < emb.points.size(); ++v)
    CHECK((emb2.points[v].coords - emb.points[v].coords).cwiseAbs().maxCoeff() == 0.0);
}
