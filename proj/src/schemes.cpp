#include "mwcut/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mwcut {

namespace {

// Hexagon corners used to draw the ball-cut point r: a--c and b--d from
// the k=3 construction, with r picked uniformly on one of the two lines.
// Either line alone gives non-uniform coordinate marginals; the even
// mixture makes every r_l uniform on [0, 2/3].
const Eigen::Vector3d kA(2.0 / 3.0, 1.0 / 3.0, 0.0);
const Eigen::Vector3d kC(0.0, 2.0 / 3.0, 1.0 / 3.0);
const Eigen::Vector3d kB(2.0 / 3.0, 0.0, 1.0 / 3.0);
const Eigen::Vector3d kD(0.0, 1.0 / 3.0, 2.0 / 3.0);

void require(bool cond, const char* what) {
  if (!cond) throw Error("InvalidConfig", what);
}

}  // namespace

void SchemeConfig::validate() const {
  require(k >= 2, "k must be >= 2");
  if (std::holds_alternative<BallCornerConfig>(variant)) {
    const auto& c = std::get<BallCornerConfig>(variant);
    require(k == 3, "ball/corner scheme is defined for k = 3");
    require(c.ball_prob >= 0.0 && c.ball_prob <= 1.0, "ball_prob outside [0,1]");
  } else if (std::holds_alternative<IcutCornerConfig>(variant)) {
    const auto& c = std::get<IcutCornerConfig>(variant);
    require(c.icut_prob >= 0.0 && c.icut_prob <= 1.0, "icut_prob outside [0,1]");
    // corner_at > 1/2 keeps the joint corner cut's corners disjoint.
    require(c.corner_at > 0.5 && c.corner_at < 1.0, "corner_at outside (1/2, 1)");
  } else if (std::holds_alternative<DiscreteConfig>(variant)) {
    const auto& c = std::get<DiscreteConfig>(variant);
    c.dist.validate();
    require(c.dist.k == k, "discrete table k mismatch");
  } else if (std::holds_alternative<MixtureConfig>(variant)) {
    const auto& c = std::get<MixtureConfig>(variant);
    require(c.weights.size() == c.components.size() && !c.weights.empty(), "empty mixture");
    double total = 0.0;
    for (size_t i = 0; i < c.weights.size(); ++i) {
      require(c.weights[i] >= 0.0 && c.weights[i] <= 1.0, "mixture weight outside [0,1]");
      require(c.components[i] != nullptr, "null mixture component");
      require(c.components[i]->k == k, "mixture component k mismatch");
      c.components[i]->validate();
      total += c.weights[i];
    }
    require(std::abs(total - 1.0) <= 1e-9, "mixture weights must sum to 1");
  }
}

SchemeConfig make_ckr(int k) { return SchemeConfig{k, CkrConfig{}}; }
SchemeConfig make_independent_uniform(int k) { return SchemeConfig{k, IndependentUniformConfig{}}; }
SchemeConfig make_ball_corner(double ball_prob, bool independent_rays) {
  return SchemeConfig{3, BallCornerConfig{ball_prob, independent_rays}};
}
SchemeConfig make_icut_corner(int k, double corner_at, double icut_prob, bool use_last_slice) {
  return SchemeConfig{k, IcutCornerConfig{corner_at, icut_prob, use_last_slice}};
}
SchemeConfig make_discrete(DiscreteDistribution dist) {
  int k = dist.k;
  return SchemeConfig{k, DiscreteConfig{std::move(dist)}};
}
SchemeConfig make_mixture(std::vector<std::pair<double, SchemeConfig>> components) {
  MixtureConfig mix;
  int k = components.empty() ? 0 : components.front().second.k;
  for (auto& [w, cfg] : components) {
    mix.weights.push_back(w);
    mix.components.push_back(std::make_shared<SchemeConfig>(std::move(cfg)));
  }
  return SchemeConfig{k, std::move(mix)};
}

int classify_point(const Sparc& s, const SimplexPoint<double>& p) {
  const int k = s.k();
  if (p.k() != k) throw Error("DimensionMismatch", "point dimension != sparc k");
  for (int m = 0; m < s.slice_count; ++m) {
    int t = s.order[static_cast<size_t>(m)];
    if (p.coords[t] >= s.thresholds(t)) return t;
  }
  return s.order.back();
}

namespace {

int classify_rays(const RayCut& cut, const SimplexPoint<double>& p) {
  Eigen::Vector3d d = Eigen::Vector3d(p.coords[0], p.coords[1], p.coords[2]) - cut.r;
  int positive = -1, second = -1, negative = -1;
  for (int l = 0; l < 3; ++l) {
    if (d(l) > 0) {
      if (positive < 0)
        positive = l;
      else
        second = l;
    } else if (d(l) < 0) {
      negative = l;
    }
  }
  if (positive >= 0 && second < 0) return positive;  // wedge at a vertex
  if (positive >= 0 && second >= 0) {
    // Wedge along side `negative` between terminals positive/second; the
    // chosen ray for that side decides which of the two owns the wedge.
    int line = cut.ray_line[static_cast<size_t>(negative)];
    return line == positive ? positive : second;
  }
  // Boundary point (some d_l = 0, none positive): lowest index with d_l = 0.
  for (int l = 0; l < 3; ++l)
    if (d(l) == 0) return l;
  return 0;
}

}  // namespace

int classify_cut(const CutRealization& cut, const SimplexPoint<double>& p) {
  if (std::holds_alternative<Sparc>(cut)) return classify_point(std::get<Sparc>(cut), p);
  return classify_rays(std::get<RayCut>(cut), p);
}

int crossings_on_segment(const Sparc& s, const Segment<double>& e) {
  auto al = alignment_of(e);
  if (!al) throw Error("UnalignedSegment", "crossings need an aligned segment");
  const int i = al->i, j = al->j;
  // Parameterize so that coordinate i increases along t in [0, L].
  bool forward = e.b.coords[i] > e.a.coords[i];
  const SimplexPoint<double>& start = forward ? e.a : e.b;
  const double L = segment_length(e);
  const double lo_i = start.coords[i];
  const double hi_j = start.coords[j];

  double ta = 0.0, tb = L;  // yet-uncaptured interval
  bool empty = false;
  int cuts = 0;
  for (int m = 0; m < s.slice_count && !empty; ++m) {
    int t = s.order[static_cast<size_t>(m)];
    double rho = s.thresholds(t);
    if (t == i) {
      double pos = rho - lo_i;  // corner claims t >= pos
      if (pos <= ta)
        empty = true;
      else if (pos < tb) {
        ++cuts;
        tb = pos;
      }
    } else if (t == j) {
      double pos = hi_j - rho;  // corner claims t <= pos
      if (pos >= tb)
        empty = true;
      else if (pos > ta) {
        ++cuts;
        ta = pos;
      }
    } else {
      if (start.coords[t] >= rho) empty = true;  // captures all or nothing
    }
  }
  return cuts;
}

namespace {

Sparc sample_icut_corner(const IcutCornerConfig& c, int k, RngState& rng) {
  Sparc s;
  s.order = rng.permutation(k);
  s.thresholds.resize(k);
  s.slice_count = c.use_last_slice ? k : k - 1;
  if (rng.uniform() < c.icut_prob) {
    for (int t = 0; t < k; ++t) s.thresholds(t) = rng.uniform_in(0.0, c.corner_at);
  } else {
    double rho = rng.uniform_in(c.corner_at, 1.0);
    s.thresholds.setConstant(rho);
  }
  return s;
}

CutRealization sample_ball_corner(const BallCornerConfig& c, RngState& rng) {
  if (rng.uniform() < c.ball_prob) {
    bool line_ac = rng.next_u64() & 1;
    double t = rng.uniform();
    Eigen::Vector3d r = line_ac ? (kA + t * (kC - kA)).eval() : (kB + t * (kD - kB)).eval();
    if (c.independent_rays) {
      RayCut cut;
      cut.r = r;
      for (int side = 0; side < 3; ++side) {
        int first = side == 0 ? 1 : 0;
        int second = side == 2 ? 1 : 2;
        cut.ray_line[static_cast<size_t>(side)] = (rng.next_u64() & 1) ? first : second;
      }
      return cut;
    }
    // Sparc equivalent: slice two of the three planes through r in random
    // order; the third terminal keeps the remainder.
    Sparc s;
    s.order = rng.permutation(3);
    s.thresholds = r;
    s.slice_count = 2;
    return s;
  }
  // Corner cut: two random terminals sliced at a common rho in (2/3, 1].
  Sparc s;
  s.order = rng.permutation(3);
  double rho = rng.uniform_in(2.0 / 3.0, 1.0);
  s.thresholds.setConstant(3, rho);
  s.slice_count = 2;
  return s;
}

}  // namespace

CutRealization sample_cut_unchecked(const SchemeConfig& cfg, RngState& rng) {
  const int k = cfg.k;
  if (std::holds_alternative<CkrConfig>(cfg.variant)) {
    Sparc s;
    s.order = rng.permutation(k);
    s.thresholds.setConstant(k, rng.uniform_open0());
    s.slice_count = k - 1;
    return s;
  }
  if (std::holds_alternative<IndependentUniformConfig>(cfg.variant)) {
    Sparc s;
    s.order = rng.permutation(k);
    s.thresholds.resize(k);
    for (int t = 0; t < k; ++t) s.thresholds(t) = rng.uniform_open0();
    s.slice_count = k - 1;
    return s;
  }
  if (std::holds_alternative<BallCornerConfig>(cfg.variant))
    return sample_ball_corner(std::get<BallCornerConfig>(cfg.variant), rng);
  if (std::holds_alternative<IcutCornerConfig>(cfg.variant))
    return sample_icut_corner(std::get<IcutCornerConfig>(cfg.variant), k, rng);
  if (std::holds_alternative<DiscreteConfig>(cfg.variant)) {
    const auto& dist = std::get<DiscreteConfig>(cfg.variant).dist;
    double u = rng.uniform();
    double acc = 0.0;
    const DiscreteSparc* chosen = &dist.entries.back().first;
    for (const auto& [sparc, p] : dist.entries) {
      acc += p;
      if (u < acc) {
        chosen = &sparc;
        break;
      }
    }
    Sparc s;
    s.order = rng.permutation(k);
    s.thresholds.setZero(k);
    s.slice_count = k - 1;
    for (int m = 0; m < k - 1; ++m) {
      int box = chosen->q[static_cast<size_t>(m)];
      double d = rng.uniform_in(box / static_cast<double>(dist.N),
                                (box + 1) / static_cast<double>(dist.N));
      s.thresholds(s.order[static_cast<size_t>(m)]) = d;
    }
    return s;
  }
  const auto& mix = std::get<MixtureConfig>(cfg.variant);
  double u = rng.uniform();
  double acc = 0.0;
  size_t pick = mix.components.size() - 1;
  for (size_t i = 0; i < mix.weights.size(); ++i) {
    acc += mix.weights[i];
    if (u < acc) {
      pick = i;
      break;
    }
  }
  return sample_cut_unchecked(*mix.components[pick], rng);
}

CutRealization sample_cut(const SchemeConfig& cfg, RngState& rng) {
  cfg.validate();
  return sample_cut_unchecked(cfg, rng);
}

std::pair<Labeling, double> round_embedding(const SchemeConfig& cfg,
                                            const AlignedInstance<double>& inst, RngState rng,
                                            long repetitions) {
  if (repetitions < 1) throw Error("BadRepetitions", "need repetitions >= 1");
  cfg.validate();
  const auto& g = inst.graph;
  Labeling best;
  double best_cost = 0.0;
  bool have = false;
  for (long rep = 0; rep < repetitions; ++rep) {
    RngState shard = rng.substream(static_cast<std::uint64_t>(rep));
    CutRealization cut = sample_cut_unchecked(cfg, shard);
    Labeling lab;
    lab.label.resize(static_cast<size_t>(g.node_count));
    for (int v = 0; v < g.node_count; ++v)
      lab.label[static_cast<size_t>(v)] = classify_cut(cut, inst.embedding.points[static_cast<size_t>(v)]);
    double cost = cut_cost(g, lab);  // also validates terminal labels
    if (!have || cost < best_cost) {
      have = true;
      best_cost = cost;
      best = std::move(lab);
    }
  }
  return {std::move(best), best_cost};
}

std::vector<double> scheme_breakpoints(const SchemeConfig& cfg) {
  std::vector<double> out;
  if (std::holds_alternative<BallCornerConfig>(cfg.variant)) {
    out.push_back(2.0 / 3.0);
  } else if (std::holds_alternative<IcutCornerConfig>(cfg.variant)) {
    out.push_back(std::get<IcutCornerConfig>(cfg.variant).corner_at);
  } else if (std::holds_alternative<DiscreteConfig>(cfg.variant)) {
    int N = std::get<DiscreteConfig>(cfg.variant).dist.N;
    for (int q = 1; q < N; ++q) out.push_back(q / static_cast<double>(N));
  } else if (std::holds_alternative<MixtureConfig>(cfg.variant)) {
    for (const auto& comp : std::get<MixtureConfig>(cfg.variant).components) {
      auto sub = scheme_breakpoints(*comp);
      out.insert(out.end(), sub.begin(), sub.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return out;
}

}  // namespace mwcut
