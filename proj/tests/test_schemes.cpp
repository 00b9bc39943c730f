#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "mwcut/schemes.hpp"

using namespace mwcut;

namespace {

Sparc make_sparc(std::vector<int> order, std::vector<double> rho, int slices) {
  Sparc s;
  s.order = std::move(order);
  s.thresholds.resize(static_cast<Eigen::Index>(rho.size()));
  for (size_t i = 0; i < rho.size(); ++i) s.thresholds(static_cast<Eigen::Index>(i)) = rho[i];
  s.slice_count = slices;
  return s;
}

// Independent oracle: recover the piecewise labels of the segment from
// classify_point at interval midpoints and count the label changes. Equals
// the capture count for k-1-slice sparcs, where the remainder owner never
// coincides with a capturing terminal.
int label_change_oracle(const Sparc& s, const Segment<double>& e) {
  auto al = alignment_of(e);
  REQUIRE(al.has_value());
  std::vector<double> ts{0.0, 1.0};
  for (int l : {al->i, al->j}) {
    double delta = e.b.coords[l] - e.a.coords[l];
    double u = (s.thresholds(l) - e.a.coords[l]) / delta;
    if (u > 0.0 && u < 1.0) ts.push_back(u);
  }
  std::sort(ts.begin(), ts.end());
  int changes = 0, prev = -1;
  for (size_t seg = 0; seg + 1 < ts.size(); ++seg) {
    double mid = (ts[seg] + ts[seg + 1]) / 2.0;
    Coords<double> c = e.a.coords + mid * (e.b.coords - e.a.coords);
    int lab = classify_point(s, SimplexPoint<double>{c});
    if (prev >= 0 && lab != prev) ++changes;
    prev = lab;
  }
  return changes;
}

SchemeConfig discrete_demo(int k, int N, RngState& rng) {
  DiscreteDistribution dist;
  dist.k = k;
  dist.N = N;
  int entries = 3;
  for (int i = 0; i < entries; ++i) {
    DiscreteSparc sp;
    for (int m = 0; m < k - 1; ++m) sp.q.push_back(static_cast<int>(rng.next_below(static_cast<std::uint64_t>(N))));
    dist.entries.push_back({sp, 1.0 / entries});
  }
  return make_discrete(dist);
}

}  // namespace

TEST_CASE("classify_point walks the order and falls back to the last terminal") {
  auto p = [](double a, double b, double c) { return make_point<double>({a, b, c}); };
  CHECK(classify_point(make_sparc({0, 1, 2}, {0.5, 0.5, 0.5}, 2), p(0.6, 0.2, 0.2)) == 0);
  CHECK(classify_point(make_sparc({0, 1, 2}, {0.9, 0.1, 0.1}, 2), p(0.2, 0.15, 0.65)) == 1);
  CHECK(classify_point(make_sparc({0, 1, 2}, {0.9, 0.9, 0.9}, 3), p(1.0 / 3, 1.0 / 3, 1.0 / 3)) == 2);
  // Closed corner: boundary points are captured.
  CHECK(classify_point(make_sparc({0, 1, 2}, {0.6, 0.5, 0.5}, 2), p(0.6, 0.2, 0.2)) == 0);
}

TEST_CASE("crossings_on_segment spec examples") {
  Segment<double> e{make_point<double>({0.5, 0.3, 0.2}), make_point<double>({0.6, 0.2, 0.2})};
  // Fully inside the first corner: captured whole, no cut.
  CHECK(crossings_on_segment(make_sparc({0, 1, 2}, {0.2, 0.9, 0.9}, 2), e) == 0);
  // rho_0 interior to e_0, terminal 0 first: one cut.
  CHECK(crossings_on_segment(make_sparc({0, 1, 2}, {0.55, 0.9, 0.9}, 2), e) == 1);
  // Both aligned thresholds interior, third terminal first but not capturing.
  CHECK(crossings_on_segment(make_sparc({2, 0, 1}, {0.55, 0.25, 0.9}, 3), e) == 2);
  // Third terminal captures everything first: zero.
  CHECK(crossings_on_segment(make_sparc({2, 0, 1}, {0.55, 0.25, 0.1}, 3), e) == 0);
  CHECK_THROWS_WITH_AS(
      crossings_on_segment(make_sparc({0, 1, 2}, {0.5, 0.5, 0.5}, 2),
                           Segment<double>{make_point<double>({1.0, 0.0, 0.0}),
                                           make_point<double>({0.0, 0.5, 0.5})}),
      doctest::Contains("UnalignedSegment"), Error);
}

TEST_CASE("crossings agree with the label-change oracle for k-1-slice sparcs") {
  RngState rng(31);
  for (int it = 0; it < 100000; ++it) {
    int k = 3 + static_cast<int>(rng.next_below(3));
    // Random aligned segment on coordinates 0,1.
    double rest = rng.uniform() * 0.5;
    double len = 0.05 + rng.uniform() * 0.3;
    double lo0 = rng.uniform() * (1.0 - rest - len);
    Coords<double> a = Coords<double>::Zero(k), b;
    a[0] = lo0;
    a[1] = 1.0 - rest - lo0;
    for (int l = 2; l < k; ++l) a[l] = rest / (k - 2);
    b = a;
    b[0] += len;
    b[1] -= len;
    Segment<double> e{SimplexPoint<double>{a}, SimplexPoint<double>{b}};

    Sparc s;
    s.order = rng.permutation(k);
    s.thresholds.resize(k);
    for (int t = 0; t < k; ++t) s.thresholds(t) = rng.uniform();
    s.slice_count = k - 1;
    CHECK(crossings_on_segment(s, e) == label_change_oracle(s, e));
  }
}

TEST_CASE("sampling is replay-identical for a frozen rng") {
  auto cfg = make_ckr(4);
  RngState a(42, 7), b(42, 7);
  for (int it = 0; it < 20; ++it) {
    auto ca = sample_cut(cfg, a);
    auto cb = sample_cut(cfg, b);
    const Sparc& sa = std::get<Sparc>(ca);
    const Sparc& sb = std::get<Sparc>(cb);
    CHECK(sa.order == sb.order);
    CHECK((sa.thresholds - sb.thresholds).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("validity: every sampled cut keeps each terminal in its own block") {
  RngState rng(63);
  std::vector<SchemeConfig> schemes;
  for (int k = 3; k <= 8; ++k) {
    schemes.push_back(make_ckr(k));
    schemes.push_back(make_independent_uniform(k));
    schemes.push_back(make_icut_corner(k));
    schemes.push_back(make_icut_corner(k, 0.588, 0.659, false));
    schemes.push_back(discrete_demo(k, 4, rng));
  }
  schemes.push_back(make_ball_corner());
  schemes.push_back(make_ball_corner(8.0 / 11.0, true));
  schemes.push_back(make_mixture({{0.5, make_ckr(3)}, {0.5, make_ball_corner()}}));

  for (const auto& cfg : schemes) {
    cfg.validate();
    std::vector<SimplexPoint<double>> vertices;
    for (int i = 0; i < cfg.k; ++i) vertices.push_back(simplex_vertex<double>(cfg.k, i));
    RngState sampler = rng.substream(static_cast<std::uint64_t>(cfg.k * 100 + vertices.size()));
    for (int it = 0; it < 100000; ++it) {
      auto cut = sample_cut_unchecked(cfg, sampler);
      for (int i = 0; i < cfg.k; ++i) {
        if (classify_cut(cut, vertices[static_cast<size_t>(i)]) != i) {
          REQUIRE(false);  // fail loudly with context
        }
      }
    }
  }
}

TEST_CASE("joint corner cut classification is order-invariant for rho > 1/2") {
  RngState rng(77);
  for (int it = 0; it < 2000; ++it) {
    int k = 3 + static_cast<int>(rng.next_below(4));
    double rho = 0.5 + 1e-6 + rng.uniform() * (0.5 - 2e-6);
    Coords<double> c(k);
    double sum = 0;
    for (int l = 0; l < k; ++l) {
      c[l] = -std::log(1.0 - rng.uniform());
      sum += c[l];
    }
    c /= sum;
    SimplexPoint<double> p{c};
    Sparc s;
    s.thresholds.setConstant(k, rho);
    s.slice_count = k;
    int owner = -1;
    for (int l = 0; l < k; ++l)
      if (c[l] >= rho) owner = l;  // at most one since rho > 1/2
    for (int rep = 0; rep < 5; ++rep) {
      s.order = rng.permutation(k);
      int lab = classify_point(s, p);
      if (owner >= 0)
        CHECK(lab == owner);  // capture order is irrelevant inside a corner
      else
        CHECK(lab == s.order.back());  // the remainder goes to the last terminal
    }
  }
}

TEST_CASE("ball cut fact: r coordinates are uniform on [0, 2/3]") {
  auto cfg = make_ball_corner(1.0, false);  // ball branch only
  RngState rng(101);
  const int n = 200000;
  std::vector<std::vector<double>> samples(3);
  for (int it = 0; it < n; ++it) {
    auto cut = sample_cut_unchecked(cfg, rng);
    const Sparc& s = std::get<Sparc>(cut);
    for (int l = 0; l < 3; ++l) samples[static_cast<size_t>(l)].push_back(s.thresholds(l));
  }
  for (int l = 0; l < 3; ++l) {
    auto& v = samples[static_cast<size_t>(l)];
    std::sort(v.begin(), v.end());
    double ks = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
      double f = v[i] / (2.0 / 3.0);
      ks = std::max(ks, std::abs(f - static_cast<double>(i + 1) / n));
      ks = std::max(ks, std::abs(f - static_cast<double>(i) / n));
    }
    CHECK(ks < 0.005);
  }
}

TEST_CASE("ball cut fact: each candidate ray is used with probability 1/2") {
  auto cfg = make_ball_corner(1.0, false);
  RngState rng(103);
  const int n = 200000;
  // used[side][line]: how often the cut boundary at `side` lies on `line`.
  std::map<std::pair<int, int>, int> used;
  for (int it = 0; it < n; ++it) {
    auto cut = sample_cut_unchecked(cfg, rng);
    const Sparc& s = std::get<Sparc>(cut);
    int f = s.order[0], g = s.order[1], h = s.order[2];
    // First slice's line serves the two sides other than f; the second
    // slice's surviving ray serves side f.
    ++used[{g, f}];
    ++used[{h, f}];
    ++used[{f, g}];
  }
  for (int side = 0; side < 3; ++side)
    for (int line = 0; line < 3; ++line) {
      if (line == side) continue;
      double freq = static_cast<double>(used[{side, line}]) / n;
      CHECK(freq == doctest::Approx(0.5).epsilon(0.02));
    }
}

TEST_CASE("rounding the star with CKR finds the optimum 2") {
  WeightedGraph<double> star;
  star.k = 3;
  star.node_count = 4;
  star.terminals = {0, 1, 2};
  star.edges = {{0, 3, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}};
  auto [emb, vol] = solve_relaxation(star);
  auto inst = align_embedding(star, emb);
  auto [lab, cost] = round_embedding(make_ckr(3), inst, RngState(11), 400);
  CHECK(cost == doctest::Approx(2.0));
  check_labeling(star, lab);
}

TEST_CASE("graph already at vertices rounds to its integral cost") {
  WeightedGraph<double> g;
  g.k = 3;
  g.node_count = 4;
  g.terminals = {0, 1, 2};
  g.edges = {{0, 3, 1.0}, {1, 3, 2.0}, {2, 3, 0.5}};
  Embedding<double> emb;
  emb.points = {simplex_vertex<double>(3, 0), simplex_vertex<double>(3, 1),
                simplex_vertex<double>(3, 2), simplex_vertex<double>(3, 1)};
  auto inst = align_embedding(g, emb);
  auto [lab, cost] = round_embedding(make_icut_corner(3), inst, RngState(4), 5);
  CHECK(cost == doctest::Approx(1.5));
  CHECK(lab.label[3] == 1);
}
