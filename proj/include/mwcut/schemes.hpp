#ifndef MWCUT_SCHEMES_HPP_
#define MWCUT_SCHEMES_HPP_

#include <array>
#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "mwcut/discrete.hpp"
#include "mwcut/relaxation.hpp"
#include "mwcut/rng.hpp"
#include "mwcut/simplex.hpp"

namespace mwcut {

/// A side-parallel cut: terminals claim their corners x_i >= rho_i in
/// `order`; the first slice_count terminals in the order make slices, the
/// last terminal always inherits whatever remains unclaimed.
struct Sparc {
  std::vector<int> order;        // permutation of 0..k-1
  Eigen::VectorXd thresholds;    // per-terminal rho_i in [0,1]
  int slice_count = 0;           // k or k-1

  int k() const { return static_cast<int>(order.size()); }
};

/// The non-sparc form of the ball cut (k = 3): three rays out of r, one per
/// simplex side; ray_line[s] names the coordinate line the chosen ray for
/// side s lies on.
struct RayCut {
  Eigen::Vector3d r;
  std::array<int, 3> ray_line{};
};

using CutRealization = std::variant<Sparc, RayCut>;

struct CkrConfig {};
struct IndependentUniformConfig {};
struct BallCornerConfig {
  double ball_prob = 8.0 / 11.0;
  bool independent_rays = false;  // default form is the two-slice sparc equivalent
};
struct IcutCornerConfig {
  double corner_at = 6.0 / 11.0;
  double icut_prob = 0.667186;
  bool use_last_slice = true;  // false gives the k-1-slice tuned variant
};
struct DiscreteConfig {
  DiscreteDistribution dist;
};
struct SchemeConfig;
struct MixtureConfig {
  std::vector<double> weights;
  std::vector<std::shared_ptr<SchemeConfig>> components;
};

/// A cutting scheme: a sampleable probability distribution over k-way cuts
/// of the simplex.
struct SchemeConfig {
  int k = 3;
  std::variant<CkrConfig, IndependentUniformConfig, BallCornerConfig, IcutCornerConfig,
               DiscreteConfig, MixtureConfig>
      variant;

  void validate() const;
};

SchemeConfig make_ckr(int k);
SchemeConfig make_independent_uniform(int k);
SchemeConfig make_ball_corner(double ball_prob = 8.0 / 11.0, bool independent_rays = false);
SchemeConfig make_icut_corner(int k, double corner_at = 6.0 / 11.0, double icut_prob = 0.667186,
                              bool use_last_slice = true);
SchemeConfig make_discrete(DiscreteDistribution dist);
SchemeConfig make_mixture(std::vector<std::pair<double, SchemeConfig>> components);

/// Sequential capture: the first terminal in the order whose slice's corner
/// contains p claims it (corners are closed: p_i >= rho_i); if no slice
/// does, the last terminal in the order claims the remainder.
int classify_point(const Sparc& s, const SimplexPoint<double>& p);

/// Terminal claimed by an arbitrary cut realization.
int classify_cut(const CutRealization& cut, const SimplexPoint<double>& p);

/// Number of terminals that capture some but not all of the yet-uncaptured
/// part of the aligned segment e; only the two aligned terminals can cut.
int crossings_on_segment(const Sparc& s, const Segment<double>& e);

/// Draws one cut of the simplex from the scheme.
CutRealization sample_cut(const SchemeConfig& cfg, RngState& rng);

/// Same, skipping config validation; for callers that validated up front.
CutRealization sample_cut_unchecked(const SchemeConfig& cfg, RngState& rng);

/// Rounds an aligned embedded graph: samples `repetitions` cuts, labels the
/// original nodes through each, and keeps the cheapest valid multiway cut.
std::pair<Labeling, double> round_embedding(const SchemeConfig& cfg,
                                            const AlignedInstance<double>& inst, RngState rng,
                                            long repetitions);

/// Threshold values at which the scheme's densities are discontinuous;
/// scan segments get pre-subdivided at these per coordinate.
std::vector<double> scheme_breakpoints(const SchemeConfig& cfg);

}  // namespace mwcut

#endif  // MWCUT_SCHEMES_HPP_
