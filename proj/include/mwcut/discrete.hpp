#ifndef MWCUT_DISCRETE_HPP_
#define MWCUT_DISCRETE_HPP_

#include <utility>
#include <vector>

#include "mwcut/error.hpp"

namespace mwcut {

/// Slice boxes of one discrete sparc: slice m is drawn uniformly from
/// [q[m]/N, (q[m]+1)/N] and applied to the m-th terminal of a random
/// permutation. A sparc carries k-1 slices.
struct DiscreteSparc {
  std::vector<int> q;  // size k-1, entries in [0, N-1]
};

/// Grid box a of side 1/N; admissible when its closed box meets the simplex,
/// i.e. sum a_i <= N <= sum (a_i + 1).
struct CellId {
  std::vector<int> a;  // size k, entries in [0, N-1]
};

inline bool cell_admissible(const CellId& cell, int N) {
  int lo = 0;
  for (int v : cell.a) lo += v;
  return lo <= N && N <= lo + static_cast<int>(cell.a.size());
}

/// A probability distribution over discrete sparcs plus the LP's certified
/// density bound tau.
struct DiscreteDistribution {
  int k = 0;
  int N = 0;
  double bound = 0.0;
  std::vector<std::pair<DiscreteSparc, double>> entries;

  void validate() const {
    if (k < 2 || N < 1) throw Error("BadDistribution", "need k >= 2, N >= 1");
    double total = 0.0;
    for (const auto& [sparc, p] : entries) {
      if (p < 0) throw Error("BadDistribution", "negative probability");
      if (static_cast<int>(sparc.q.size()) != k - 1)
        throw Error("BadDistribution", "sparc arity mismatch");
      for (int v : sparc.q)
        if (v < 0 || v >= N) throw Error("BadDistribution", "box index out of range");
      total += p;
    }
    if (total < 1.0 - 1e-9 || total > 1.0 + 1e-9)
      throw Error("BadDistribution", "probabilities must sum to 1");
  }
};

}  // namespace mwcut

#endif  // MWCUT_DISCRETE_HPP_
