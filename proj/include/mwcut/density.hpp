#ifndef MWCUT_DENSITY_HPP_
#define MWCUT_DENSITY_HPP_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mwcut/schemes.hpp"
#include "mwcut/simplex.hpp"

namespace mwcut {

/// Piecewise-constant threshold density on [0,1]; F(z) is its integral.
/// Total mass may be below 1 (a slice that sometimes does not appear).
struct ThresholdCdf {
  std::vector<double> breakpoints;  // ascending, breakpoints.front()=0, back()=1
  std::vector<double> densities;    // one per piece

  double cdf(double z) const;
  double pdf(double z) const;  // right-continuous; at z = 1 the last piece
  bool at_interior_breakpoint(double z) const;

  static ThresholdCdf uniform01();
  /// F(z) = min(z / hi, 1): a slice uniform on [0, hi].
  static ThresholdCdf uniform_to(double hi);
};

/// Monte-Carlo density of a scheme on one aligned segment: expected
/// crossings per unit length, with its standard error.
struct DensityEstimate {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  long trials = 0;
  std::string segment;
};

struct DensityEntry {
  Alignment alignment;
  Eigen::VectorXd center;
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  std::string method;  // "exact" or "mc"
};

struct DensityReport {
  std::vector<DensityEntry> entries;
  double max_density = 0.0;
  int argmax = -1;
};

/// Samples `trials` cuts and counts crossings of e (capture simulation for
/// sparcs, endpoint label difference for ray cuts).
DensityEstimate mc_density(const SchemeConfig& cfg, const Segment<double>& e, long trials,
                           RngState rng);

/// Density of an independent-threshold sparc scheme at point x for an
/// i,j-aligned infinitesimal segment, by the full sum over k! terminal
/// orderings:  (1/k!) sum_sigma sum_{l in {i,j}} [l sliced] F'_l(x_l)
/// prod_{h before l} (1 - F_h(x_h)). Requires k <= 10 and evaluation away
/// from the cdf breakpoints (callers pre-subdivide).
double exact_sparc_density(int k, const std::vector<ThresholdCdf>& cdfs, bool use_last_slice,
                           const SimplexPoint<double>& x, const Alignment& al);

/// C_k(x1,x2): the permutation sum at (x1, x2, c, .., c) with
/// c = (1-x1-x2)/(k-2), evaluated in O(k) by conditioning on how many
/// terminals precede terminal 1.
double c_k(double x1, double x2, int k, const ThresholdCdf& F);

/// C_inf(x1,x2): the k -> infinity limit of C_k in closed form, with
/// a = (1-x1-x2) F'(0). Small a switches to the series limits.
double c_inf(double x1, double x2, const ThresholdCdf& F);

/// C_3(x1,x2) in closed form on the domain where the third coordinate
/// saturates F (for the standard corner placement: x1 + x2 <= 5/11).
double c3(double x1, double x2, const ThresholdCdf& F);

/// Upper bound on the worst completion x_3..x_k for 1,2-aligned segments:
/// max of C_k and, when the three-terminal point is feasible, C_3.
double d_bound(double x1, double x2, int k, const ThresholdCdf& F);
double d_bound(double x1, double x2, int k);  // standard corner placement 6/11

/// C_inf along the case-1 slice (both coordinates below the support end),
/// parameterized by a = (1 - x1 - x2) F'(0); well-defined for uniform_to
/// threshold cdfs, where case-1 values depend only on x1 + x2.
double cinf_case1(double a, const ThresholdCdf& F);

/// C_inf when one aligned coordinate saturates F (case 2); decreasing in a,
/// so its supremum is the a -> 0 limit F'(0)/2.
double cinf_case2(double a, const ThresholdCdf& F);

struct PeakReport {
  double max_value = 0.0;
  double arg = 0.0;
};

/// Numerical maximum of the case-1 curve over a in [0, F'(0)]: 1e-4 grid
/// followed by golden-section refinement.
PeakReport cinf_case1_peak(const ThresholdCdf& F);

/// Exact combined density of the ICUT + joint-corner mixture at x:
/// alpha * icut density + (1-alpha) * corner density, the latter being
/// 1/(1-corner_at) on the aligned coordinate inside a corner (scaled by
/// (k-1)/k when the last terminal makes no slice).
double combined_icut_corner_density(const IcutCornerConfig& cfg, int k,
                                    const SimplexPoint<double>& x, const Alignment& al);

/// Exact CKR density at a point: for each orientation of the segment the
/// aligned terminals contribute 1 - 1/k when nothing blocks them and
/// 1/(B+1) with B blocking terminals otherwise; the worse orientation
/// counts.
double ckr_point_density(int k, const SimplexPoint<double>& x, const Alignment& al);

/// Exact ball/corner density of a (possibly non-infinitesimal) aligned
/// segment from the two distributional facts of the scheme: each r_l is
/// uniform on [0, 2/3] and each candidate ray is used with probability 1/2.
double ball_corner_segment_density(const BallCornerConfig& cfg, const Segment<double>& e);

/// Exact per-segment density when the scheme admits one (closed forms and
/// permutation sums); nullopt when only Monte-Carlo is available.
std::optional<double> exact_segment_density(const SchemeConfig& cfg, const Segment<double>& e);

/// Scans 1,2-aligned segments of length eps centered on the barycentric
/// grid (tail coordinates nondecreasing; the schemes here all have
/// permutation-symmetric densities), pre-subdividing at the scheme's
/// breakpoints, and reports per-segment densities and the maximum. Exact
/// evaluators are used where available, Monte-Carlo otherwise.
DensityReport max_density_scan(const SchemeConfig& cfg, int grid_res, double eps, long trials,
                               RngState rng);

/// CSV columns: alignment, center coordinates, mean, stderr, method.
void write_density_csv(const DensityReport& report, std::ostream& os);

}  // namespace mwcut

#endif  // MWCUT_DENSITY_HPP_
