#include <doctest.h>

#include "mwcut/instances.hpp"

using namespace mwcut;

TEST_CASE("G_1: volume 12, nine paths, min cut 12 by both oracles") {
  auto inst = generate_gn(1);
  CHECK(inst.volume == Rational(12));
  CHECK(inst.paths.size() == 9);
  auto rep = verify_gn(1);  // includes the brute-force cross-check
  CHECK(rep.volume == Rational(12));
  CHECK(rep.min_cut == Rational(12));
  CHECK(rep.ratio == Rational(1));
}

TEST_CASE("G_2: path lengths and weights are exact integers") {
  auto inst = generate_gn(2);
  CHECK(inst.volume == Rational(23));
  CHECK(inst.paths.size() == 18);
  // p(i,j,m/(3N)) has length 1 + m/(3N): check via its edge count, m = 1.
  int M = 6;
  int edges_on_path = M + 1;  // 3N + m grid steps of length 1/(3N)
  Rational length = Rational(edges_on_path, M);
  CHECK(length == Rational(1) + Rational(1, 6));
  for (const auto& w : inst.mesh.weights) {
    CHECK(w.den() == 1);
    CHECK(w.num() >= 0);
  }
}

TEST_CASE("verify_gn at small N: exact values, increasing ratio") {
  Rational prev_ratio(0);
  for (int N : {1, 2, 3, 4}) {
    auto rep = verify_gn(N);
    CHECK(rep.volume == Rational(11 * N + 1));
    CHECK(rep.min_cut == Rational(12 * N));
    CHECK(rep.ratio == Rational(12 * N, 11 * N + 1));
    CHECK(rep.ratio > prev_ratio);
    CHECK(rep.ratio < Rational(12, 11));
    prev_ratio = rep.ratio;
  }
}

TEST_CASE("the disconnected corner cut is the witness and costs 12N") {
  for (int N : {1, 3}) {
    auto inst = generate_gn(N);
    auto witness = planar_dual_min_3cut(inst.mesh);
    CHECK(witness.value == Rational(12 * N));
    CHECK_FALSE(witness.connected);
  }
}
