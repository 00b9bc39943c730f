#include "mwcut/density.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mwcut/util.hpp"

namespace mwcut {

namespace {

constexpr int kMaxExactK = 10;

double overlap(double lo, double hi, double a, double b) {
  return std::max(0.0, std::min(hi, b) - std::max(lo, a));
}

std::string format_csv_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

double ThresholdCdf::cdf(double z) const {
  if (z <= 0.0) return 0.0;
  if (z >= 1.0) z = 1.0;
  double acc = 0.0;
  for (size_t p = 0; p + 1 < breakpoints.size(); ++p) {
    double lo = breakpoints[p], hi = breakpoints[p + 1];
    if (z <= lo) break;
    acc += densities[p] * (std::min(z, hi) - lo);
  }
  return acc;
}

double ThresholdCdf::pdf(double z) const {
  if (z < 0.0 || z > 1.0) return 0.0;
  size_t p = 0;
  while (p + 2 < breakpoints.size() && z >= breakpoints[p + 1]) ++p;
  return densities[p];
}

bool ThresholdCdf::at_interior_breakpoint(double z) const {
  for (size_t p = 1; p + 1 < breakpoints.size(); ++p)
    if (z == breakpoints[p]) return true;
  return false;
}

ThresholdCdf ThresholdCdf::uniform01() { return ThresholdCdf{{0.0, 1.0}, {1.0}}; }

ThresholdCdf ThresholdCdf::uniform_to(double hi) {
  if (hi <= 0.0 || hi >= 1.0) throw Error("DomainError", "uniform_to needs hi in (0,1)");
  return ThresholdCdf{{0.0, hi, 1.0}, {1.0 / hi, 0.0}};
}

DensityEstimate mc_density(const SchemeConfig& cfg, const Segment<double>& e, long trials,
                           RngState rng) {
  cfg.validate();
  auto al = alignment_of(e);
  if (!al) throw Error("UnalignedSegment", "mc_density needs an aligned segment");
  double len = segment_length(e);
  if (trials < 100) throw Error("BadTrials", "need at least 100 trials");

  double sum = 0.0, sumsq = 0.0;
  for (long t = 0; t < trials; ++t) {
    CutRealization cut = sample_cut_unchecked(cfg, rng);
    double c;
    if (std::holds_alternative<Sparc>(cut))
      c = static_cast<double>(crossings_on_segment(std::get<Sparc>(cut), e));
    else
      c = classify_cut(cut, e.a) != classify_cut(cut, e.b) ? 1.0 : 0.0;
    sum += c;
    sumsq += c * c;
  }
  double n = static_cast<double>(trials);
  double var = std::max(0.0, (sumsq - sum * sum / n) / (n - 1.0));

  DensityEstimate est;
  est.mean = sum / (n * len);
  est.stderr_of_mean = std::sqrt(var / n) / len;
  est.trials = trials;
  std::ostringstream desc;
  desc << "align(" << al->i << "," << al->j << ") len " << len;
  est.segment = desc.str();
  return est;
}

double exact_sparc_density(int k, const std::vector<ThresholdCdf>& cdfs, bool use_last_slice,
                           const SimplexPoint<double>& x, const Alignment& al) {
  if (k > kMaxExactK) throw Error("TooLarge", "permutation sum limited to k <= 10");
  if (x.k() != k || static_cast<int>(cdfs.size()) != k)
    throw Error("DimensionMismatch", "point/cdf arity mismatch");
  const int i = al.i, j = al.j;
  for (int l : {i, j})
    if (cdfs[static_cast<size_t>(l)].at_interior_breakpoint(x.coords[l]))
      throw Error("BreakpointAtEvaluationPoint",
                  "pre-subdivide so x_i avoids the cdf breakpoints");

  std::vector<double> survive(static_cast<size_t>(k));
  for (int h = 0; h < k; ++h)
    survive[static_cast<size_t>(h)] = 1.0 - cdfs[static_cast<size_t>(h)].cdf(x.coords[h]);
  const double fi = cdfs[static_cast<size_t>(i)].pdf(x.coords[i]);
  const double fj = cdfs[static_cast<size_t>(j)].pdf(x.coords[j]);

  std::vector<int> perm(static_cast<size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  double sum_i = 0.0, sum_j = 0.0;
  long count = 0;
  do {
    double prod = 1.0;
    for (int pos = 0; pos < k; ++pos) {
      int t = perm[static_cast<size_t>(pos)];
      bool sliced = use_last_slice || pos < k - 1;
      if (t == i) {
        if (sliced) sum_i += prod;
      } else if (t == j) {
        if (sliced) sum_j += prod;
      }
      prod *= survive[static_cast<size_t>(t)];
    }
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return (fi * sum_i + fj * sum_j) / static_cast<double>(count);
}

double c_k(double x1, double x2, int k, const ThresholdCdf& F) {
  if (k < 3) throw Error("DomainError", "c_k needs k >= 3");
  if (x1 < 0 || x2 < 0 || x1 + x2 > 1.0 + 1e-15) throw Error("DomainError", "x1 + x2 must be <= 1");
  for (double v : {x1, x2})
    if (F.at_interior_breakpoint(v))
      throw Error("BreakpointAtEvaluationPoint", "c_k at a cdf breakpoint");
  const double c = (1.0 - x1 - x2) / static_cast<double>(k - 2);
  const double sc = 1.0 - F.cdf(c);
  const double km1 = static_cast<double>(k - 1);

  // S(other) = (1/k) sum_q [ (q/(k-1)) sc^{q-1} (1-F(other)) +
  //                           (1 - q/(k-1)) sc^q ],  q = 0..k-1.
  auto S = [&](double other) {
    double s_other = 1.0 - F.cdf(other);
    double total = 0.0;
    double pow_prev = 0.0;  // sc^{q-1}, unused at q=0
    double pow_cur = 1.0;   // sc^q
    for (int q = 0; q < k; ++q) {
      double frac = static_cast<double>(q) / km1;
      double term = (1.0 - frac) * pow_cur;
      if (q > 0) term += frac * pow_prev * s_other;
      total += term;
      pow_prev = pow_cur;
      pow_cur *= sc;
    }
    return total / static_cast<double>(k);
  };
  return S(x2) * F.pdf(x1) + S(x1) * F.pdf(x2);
}

namespace {

// (1 - e^-a)/a and (1 - (1+a) e^-a)/a^2 with series fallbacks near 0.
double coeff_a(double a) {
  if (a < 1e-6) return 1.0 - a / 2.0 + a * a / 6.0;
  return (1.0 - std::exp(-a)) / a;
}
double coeff_b(double a) {
  if (a < 1e-6) return 0.5 - a / 3.0 + a * a / 8.0;
  return (1.0 - (1.0 + a) * std::exp(-a)) / (a * a);
}

}  // namespace

double c_inf(double x1, double x2, const ThresholdCdf& F) {
  if (x1 < 0 || x2 < 0 || x1 + x2 > 1.0 + 1e-15) throw Error("DomainError", "x1 + x2 must be <= 1");
  const double a = (1.0 - x1 - x2) * F.pdf(0.0);
  const double f1 = F.pdf(x1), f2 = F.pdf(x2);
  return (f1 + f2) * coeff_a(a) - (f1 * F.cdf(x2) + f2 * F.cdf(x1)) * coeff_b(a);
}

double c3(double x1, double x2, const ThresholdCdf& F) {
  if (x1 < 0 || x2 < 0 || x1 + x2 > 1.0 + 1e-15) throw Error("DomainError", "x1 + x2 must be <= 1");
  const double x3 = 1.0 - x1 - x2;
  if (F.cdf(x3) < 1.0 - 1e-12)
    throw Error("DomainError", "c3 needs the third coordinate to saturate F");
  // Third terminal always captures first chance it gets; expanding the six
  // orderings leaves (1/6)[F'(x1)(3 - F(x2)) + F'(x2)(3 - F(x1))].
  return (F.pdf(x1) * (3.0 - F.cdf(x2)) + F.pdf(x2) * (3.0 - F.cdf(x1))) / 6.0;
}

double d_bound(double x1, double x2, int k, const ThresholdCdf& F) {
  double best = c_k(x1, x2, k, F);
  const double x3 = 1.0 - x1 - x2;
  if (F.cdf(x3) >= 1.0 - 1e-12) best = std::max(best, c3(x1, x2, F));
  return best;
}

double d_bound(double x1, double x2, int k) {
  return d_bound(x1, x2, k, ThresholdCdf::uniform_to(6.0 / 11.0));
}

double cinf_case1(double a, const ThresholdCdf& F) {
  double fp0 = F.pdf(0.0);
  if (a < 0.0 || a > fp0 + 1e-12) throw Error("DomainError", "a outside [0, F'(0)]");
  double x = (1.0 - a / fp0) / 2.0;
  return c_inf(x, x, F);
}

double cinf_case2(double a, const ThresholdCdf& F) {
  return F.pdf(0.0) * (coeff_a(a) - coeff_b(a));
}

PeakReport cinf_case1_peak(const ThresholdCdf& F) {
  const double hi = F.pdf(0.0);
  PeakReport peak;
  peak.arg = 0.0;
  peak.max_value = cinf_case1(0.0, F);
  const double step = 1e-4;
  for (double a = step; a <= hi; a += step) {
    double v = cinf_case1(a, F);
    if (v > peak.max_value) {
      peak.max_value = v;
      peak.arg = a;
    }
  }
  // Golden-section refinement around the best grid point.
  double lo = std::max(0.0, peak.arg - step);
  double up = std::min(hi, peak.arg + step);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = up - gr * (up - lo), d = lo + gr * (up - lo);
  for (int it = 0; it < 80; ++it) {
    if (cinf_case1(c, F) < cinf_case1(d, F))
      lo = c;
    else
      up = d;
    c = up - gr * (up - lo);
    d = lo + gr * (up - lo);
  }
  double mid = (lo + up) / 2.0;
  double v = cinf_case1(mid, F);
  if (v > peak.max_value) {
    peak.max_value = v;
    peak.arg = mid;
  }
  return peak;
}

double combined_icut_corner_density(const IcutCornerConfig& cfg, int k,
                                    const SimplexPoint<double>& x, const Alignment& al) {
  for (int l : {al.i, al.j})
    if (x.coords[l] == cfg.corner_at)
      throw Error("StraddlesCorner", "pre-subdivide the segment against corner_at");
  const double slice_factor =
      cfg.use_last_slice ? 1.0 : static_cast<double>(k - 1) / static_cast<double>(k);
  std::vector<ThresholdCdf> cdfs(static_cast<size_t>(k), ThresholdCdf::uniform_to(cfg.corner_at));
  double icut = exact_sparc_density(k, cdfs, cfg.use_last_slice, x, al);
  double corner = 0.0;
  for (int l : {al.i, al.j})
    if (x.coords[l] > cfg.corner_at) corner += slice_factor / (1.0 - cfg.corner_at);
  return cfg.icut_prob * icut + (1.0 - cfg.icut_prob) * corner;
}

double ckr_point_density(int k, const SimplexPoint<double>& x, const Alignment& al) {
  if (x.k() != k) throw Error("DimensionMismatch", "point dimension != k");
  auto contribution = [&](int blockers) {
    if (blockers == 0) return 1.0 - 1.0 / static_cast<double>(k);
    return 1.0 / static_cast<double>(blockers + 1);
  };
  // The segment's upper terminal is blocked by strictly larger coordinates,
  // the lower one also by ties (the shared threshold sits below them).
  auto oriented = [&](int up, int down) {
    int b_up = 0, b_down = 0;
    for (int h = 0; h < k; ++h) {
      if (h != up && x.coords[h] > x.coords[up]) ++b_up;
      if (h != down && x.coords[h] >= x.coords[down]) ++b_down;
    }
    return contribution(b_up) + contribution(b_down);
  };
  return std::max(oriented(al.i, al.j), oriented(al.j, al.i));
}

double ball_corner_segment_density(const BallCornerConfig& cfg, const Segment<double>& e) {
  auto al = alignment_of(e);
  if (!al) throw Error("UnalignedSegment", "ball/corner density needs an aligned segment");
  if (e.k() != 3) throw Error("DimensionMismatch", "ball/corner scheme is for k = 3");
  const double len = segment_length(e);
  const double hex_edge = 2.0 / 3.0;
  double ball = 0.0, corner = 0.0;
  for (int l : {al->i, al->j}) {
    auto [lo, hi] = projection(e, l);
    // Ball cut: r_l uniform on [0, 2/3]; the crossing ray is used w.p. 1/2.
    ball += overlap(lo, hi, 0.0, hex_edge) / hex_edge * 0.5;
    // Corner cut: terminal l in the pair w.p. 2/3, rho uniform on (2/3, 1].
    corner += (2.0 / 3.0) * overlap(lo, hi, hex_edge, 1.0) / (1.0 - hex_edge);
  }
  return (cfg.ball_prob * ball + (1.0 - cfg.ball_prob) * corner) / len;
}

std::optional<double> exact_segment_density(const SchemeConfig& cfg, const Segment<double>& e) {
  auto al = alignment_of(e);
  if (!al) throw Error("UnalignedSegment", "exact density needs an aligned segment");
  const int k = cfg.k;
  auto midpoint = [&]() {
    Coords<double> c = (e.a.coords + e.b.coords) / 2.0;
    return SimplexPoint<double>{std::move(c)};
  };
  if (std::holds_alternative<CkrConfig>(cfg.variant))
    return ckr_point_density(k, midpoint(), *al);
  if (std::holds_alternative<IndependentUniformConfig>(cfg.variant)) {
    if (k > kMaxExactK) return std::nullopt;
    std::vector<ThresholdCdf> cdfs(static_cast<size_t>(k), ThresholdCdf::uniform01());
    return exact_sparc_density(k, cdfs, false, midpoint(), *al);
  }
  if (std::holds_alternative<BallCornerConfig>(cfg.variant))
    return ball_corner_segment_density(std::get<BallCornerConfig>(cfg.variant), e);
  if (std::holds_alternative<IcutCornerConfig>(cfg.variant)) {
    if (k > kMaxExactK) return std::nullopt;
    return combined_icut_corner_density(std::get<IcutCornerConfig>(cfg.variant), k, midpoint(),
                                        *al);
  }
  if (std::holds_alternative<MixtureConfig>(cfg.variant)) {
    const auto& mix = std::get<MixtureConfig>(cfg.variant);
    double total = 0.0;
    for (size_t c = 0; c < mix.components.size(); ++c) {
      auto part = exact_segment_density(*mix.components[c], e);
      if (!part) return std::nullopt;
      total += mix.weights[c] * *part;
    }
    return total;
  }
  return std::nullopt;  // discrete distributions go through Monte-Carlo
}

DensityReport max_density_scan(const SchemeConfig& cfg, int grid_res, double eps, long trials,
                               RngState rng) {
  cfg.validate();
  if (grid_res < 4) throw Error("BadGrid", "grid_res must be >= 4");
  if (eps > 1.0 / (4.0 * grid_res)) throw Error("BadGrid", "eps too large for the grid");
  const int k = cfg.k;
  std::vector<double> bps = scheme_breakpoints(cfg);
  std::vector<std::vector<double>> cut_values(static_cast<size_t>(k), bps);

  // Pass 1: collect all scan pieces. Segments are 0,1-aligned and the tail
  // coordinates are nondecreasing, which covers every alignment for these
  // permutation-symmetric densities.
  std::vector<Segment<double>> pieces;
  auto scan_point = [&](const std::vector<int>& counts) {
    Coords<double> p(k);
    for (int l = 0; l < k; ++l)
      p[l] = counts[static_cast<size_t>(l)] / static_cast<double>(grid_res);
    double p0 = p[0], p1 = p[1];
    if (p0 + p1 < eps) return;  // no room for a 0,1-aligned segment here
    double lo = -eps / 2.0;
    if (lo < -p0) lo = -p0;
    if (lo + eps > p1) lo = p1 - eps;
    Coords<double> a = p, b = p;
    a[0] += lo;
    a[1] -= lo;
    b[0] += lo + eps;
    b[1] -= lo + eps;
    Segment<double> seg{SimplexPoint<double>{a}, SimplexPoint<double>{b}};
    for (Segment<double>& piece : subdivide_at_thresholds(seg, cut_values)) {
      if (segment_length(piece) < 1e-12) continue;
      pieces.push_back(std::move(piece));
    }
  };
  std::vector<int> counts(static_cast<size_t>(k), 0);
  auto tail_ok = [&]() {
    for (int l = 3; l < k; ++l)
      if (counts[static_cast<size_t>(l)] < counts[static_cast<size_t>(l - 1)]) return false;
    return true;
  };
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == k - 1) {
      counts[static_cast<size_t>(pos)] = remaining;
      if (tail_ok()) scan_point(counts);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      counts[static_cast<size_t>(pos)] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  rec(rec, 0, grid_res);

  // Pass 2: evaluate each piece on its own rng stream; safe to shard.
  DensityReport report;
  report.entries.resize(pieces.size());
  parallel_for(static_cast<long>(pieces.size()), [&](long idx) {
    const Segment<double>& piece = pieces[static_cast<size_t>(idx)];
    DensityEntry entry;
    entry.alignment = Alignment{0, 1};
    entry.center = (piece.a.coords + piece.b.coords) / 2.0;
    auto exact = exact_segment_density(cfg, piece);
    if (exact) {
      entry.mean = *exact;
      entry.stderr_of_mean = 0.0;
      entry.method = "exact";
    } else {
      auto est = mc_density(cfg, piece, trials, rng.substream(static_cast<std::uint64_t>(idx)));
      entry.mean = est.mean;
      entry.stderr_of_mean = est.stderr_of_mean;
      entry.method = "mc";
    }
    report.entries[static_cast<size_t>(idx)] = std::move(entry);
  });

  for (size_t idx = 0; idx < report.entries.size(); ++idx) {
    if (report.argmax < 0 || report.entries[idx].mean > report.max_density) {
      report.max_density = report.entries[idx].mean;
      report.argmax = static_cast<int>(idx);
    }
  }
  return report;
}

void write_density_csv(const DensityReport& report, std::ostream& os) {
  os << "alignment_i,alignment_j,center,mean,stderr,method\n";
  for (const auto& e : report.entries) {
    os << e.alignment.i << "," << e.alignment.j << ",";
    for (int l = 0; l < e.center.size(); ++l) {
      if (l) os << ";";
      os << format_csv_double(e.center(l));
    }
    os << "," << format_csv_double(e.mean) << "," << format_csv_double(e.stderr_of_mean) << ","
       << e.method << "\n";
  }
}

}  // namespace mwcut
