#ifndef MWCUT_SEARCH_HPP_
#define MWCUT_SEARCH_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "mwcut/discrete.hpp"
#include "mwcut/lp.hpp"
#include "mwcut/mesh.hpp"
#include "mwcut/schemes.hpp"

namespace mwcut {

/// All grid cells whose closed box meets the simplex; when sorted_tail is
/// set, only cells with a_3 <= ... <= a_k (the representatives needed for
/// 1,2-aligned constraints under a terminal-symmetric scheme).
std::vector<CellId> enumerate_cells(int k, int N, bool sorted_tail);

/// The LP's certified upper bound on the density a discrete sparc q induces
/// on 1,2-aligned segments inside cell a: slices through the cell count
/// density N, capture is only credited across cells, never within one.
double discrete_cell_coefficient(const DiscreteSparc& q, const CellId& a, int k, int N);

/// True density of the realized discrete scheme at point x for an
/// i,j-aligned infinitesimal segment. With fixed_order set the slices go to
/// terminals fixed_order[0..k-2] in that order instead of being averaged
/// over all permutations.
double discrete_point_density(const DiscreteDistribution& dist, const SimplexPoint<double>& x,
                              const Alignment& al,
                              const std::optional<std::vector<int>>& fixed_order = std::nullopt);

/// min tau s.t. the per-cell 1,2-aligned density coefficients stay below
/// tau and the sparc probabilities form a distribution. Variables are one
/// per discrete sparc plus tau (the last).
LpProblem build_discrete_lp(int k, int N);

/// Solves the discrete search LP and packages the optimal distribution
/// with its certified bound. Entries below 1e-9 probability are pruned and
/// the rest renormalized.
DiscreteDistribution solve_discrete_search(int k, int N);

/// The sampleable scheme realizing a discrete distribution: draw a sparc
/// box by probability, thresholds uniform inside the boxes, slices applied
/// to a uniform random terminal permutation.
SchemeConfig reconstruct_scheme(const DiscreteDistribution& dist);

/// Worst-case embedded mesh graph: weights minimizing total volume subject
/// to every 3-way cut costing at least 1.
struct GapCertificate {
  int M = 0;
  std::vector<double> weights;  // per primal mesh edge
  double W = 0.0;               // minimum volume = LP objective
  double gap_lower_bound = 0.0;  // 1 / W
};

/// Mesh LP over edge weights w and dual distance variables d_{x,y} for
/// every source x (ordinary and auxiliary dual nodes): triangle
/// inequalities along dual edges, cut constraints d_{x,A}+d_{x,B}+d_{x,C}
/// >= 1 (ordinary x) and d_{X,Y}+d_{X,Z} >= 1 (auxiliary X), objective
/// min sum_e w_e / M (the volume; every mesh edge has length 1/M).
LpProblem build_mesh_lp(int M);

GapCertificate solve_mesh_lp(int M);

/// The certificate's mesh with its LP weights, for feeding the dual
/// shortest-path checker.
MeshGraph<double> certificate_mesh(const GapCertificate& cert);

}  // namespace mwcut

#endif  // MWCUT_SEARCH_HPP_
