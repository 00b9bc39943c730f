#ifndef MWCUT_SIMPLEX_HPP_
#define MWCUT_SIMPLEX_HPP_

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "mwcut/error.hpp"
#include "mwcut/rational.hpp"

namespace mwcut {

template <class Scalar>
using Coords = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Numeric-mode knobs. Doubles get the documented tolerances, rationals are
/// exact (both tolerances collapse to zero).
template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static double membership_tol() { return 1e-9; }
  static double alignment_tol() { return 1e-12; }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static Rational membership_tol() { return Rational(0); }
  static Rational alignment_tol() { return Rational(0); }
};

/// A point of the k-simplex in barycentric coordinates: entries >= 0,
/// summing to 1. Construct through make_point so the invariants hold.
template <class Scalar>
struct SimplexPoint {
  Coords<Scalar> coords;

  int k() const { return static_cast<int>(coords.size()); }
  const Scalar& operator[](int i) const { return coords[i]; }
};

/// A straight segment between two points of the same simplex.
template <class Scalar>
struct Segment {
  SimplexPoint<Scalar> a;
  SimplexPoint<Scalar> b;

  int k() const { return a.k(); }
};

/// Records that a segment is parallel to the simplex edge i--j (i < j).
struct Alignment {
  int i = 0;
  int j = 1;

  friend bool operator==(const Alignment& l, const Alignment& r) {
    return l.i == r.i && l.j == r.j;
  }
};

template <class Scalar>
SimplexPoint<Scalar> make_point(Coords<Scalar> coords) {
  const int k = static_cast<int>(coords.size());
  if (k < 2) throw Error("BadK", "need at least 2 coordinates");
  Scalar sum = Scalar(0);
  for (int i = 0; i < k; ++i) {
    if (coords[i] < Scalar(0)) throw Error("NegativeCoordinate", "coordinate " + std::to_string(i));
    sum += coords[i];
  }
  Scalar dev = sum - Scalar(1);
  if (dev < Scalar(0)) dev = -dev;
  if (dev > ScalarTraits<Scalar>::membership_tol())
    throw Error("SumNotOne", "coordinates do not sum to 1");
  return SimplexPoint<Scalar>{std::move(coords)};
}

template <class Scalar>
SimplexPoint<Scalar> make_point(std::initializer_list<Scalar> values) {
  Coords<Scalar> c(static_cast<Eigen::Index>(values.size()));
  int i = 0;
  for (const Scalar& v : values) c[i++] = v;
  return make_point(std::move(c));
}

/// Vertex i of the k-simplex (terminal i's image).
template <class Scalar>
SimplexPoint<Scalar> simplex_vertex(int k, int i) {
  if (k < 2 || i < 0 || i >= k) throw Error("BadK", "vertex index out of range");
  Coords<Scalar> c = Coords<Scalar>::Zero(k);
  c[i] = Scalar(1);
  return SimplexPoint<Scalar>{std::move(c)};
}

template <class Scalar>
Scalar half_l1_distance(const SimplexPoint<Scalar>& p, const SimplexPoint<Scalar>& q) {
  if (p.k() != q.k()) throw Error("DimensionMismatch", "points live in different simplices");
  Scalar sum = Scalar(0);
  for (int i = 0; i < p.k(); ++i) {
    Scalar d = p.coords[i] - q.coords[i];
    if (d < Scalar(0)) d = -d;
    sum += d;
  }
  return sum / Scalar(2);
}

/// Width |e_l| of the projection of e onto coordinate l.
template <class Scalar>
Scalar projection_width(const Segment<Scalar>& e, int l) {
  Scalar d = e.a.coords[l] - e.b.coords[l];
  return d < Scalar(0) ? -d : d;
}

/// Projection interval e_l = [min, max].
template <class Scalar>
std::pair<Scalar, Scalar> projection(const Segment<Scalar>& e, int l) {
  return std::minmax(e.a.coords[l], e.b.coords[l]);
}

/// Length |e| = half the L1 distance between the endpoints.
template <class Scalar>
Scalar segment_length(const Segment<Scalar>& e) {
  return half_l1_distance(e.a, e.b);
}

/// The i,j-alignment of e, or nullopt when e is not parallel to any simplex
/// edge. A segment is i,j-aligned exactly when |e| = |e_i| = |e_j| and all
/// other projections vanish.
template <class Scalar>
std::optional<Alignment> alignment_of(const Segment<Scalar>& e) {
  const Scalar tol = ScalarTraits<Scalar>::alignment_tol();
  Scalar len = segment_length(e);
  if (len <= Scalar(0)) throw Error("ZeroLengthSegment", "alignment undefined");
  int i = -1, j = -1;
  for (int l = 0; l < e.k(); ++l) {
    Scalar w = projection_width(e, l);
    if (w > tol) {
      if (i < 0)
        i = l;
      else if (j < 0)
        j = l;
      else
        return std::nullopt;  // three moving coordinates
    }
  }
  if (j < 0) return std::nullopt;  // cannot happen for points of the simplex
  Scalar di = projection_width(e, i) - len;
  Scalar dj = projection_width(e, j) - len;
  if (di < Scalar(0)) di = -di;
  if (dj < Scalar(0)) dj = -dj;
  if (di > tol || dj > tol) return std::nullopt;
  return Alignment{i, j};
}

/// Splits a->b into at most k-1 aligned segments forming a path of total
/// length |ab|. Greedy rule: repeatedly move mass from the lowest-index
/// coordinate in surplus to the lowest-index coordinate in deficit.
/// Zero-length input yields an empty list.
template <class Scalar>
std::vector<Segment<Scalar>> decompose_aligned(const Segment<Scalar>& e) {
  // Residuals below this are floating-point dust, not real deficits; in
  // exact mode the threshold is zero.
  const Scalar conv = ScalarTraits<Scalar>::exact ? Scalar(0) : Scalar(1e-13);
  std::vector<Segment<Scalar>> pieces;
  Coords<Scalar> cur = e.a.coords;
  const Coords<Scalar>& target = e.b.coords;
  const int k = e.k();
  for (;;) {
    int inc = -1, dec = -1;
    for (int l = 0; l < k && (inc < 0 || dec < 0); ++l) {
      if (inc < 0 && target[l] - cur[l] > conv) inc = l;
      if (dec < 0 && cur[l] - target[l] > conv) dec = l;
    }
    if (inc < 0 || dec < 0) break;
    Scalar need = target[inc] - cur[inc];
    Scalar have = cur[dec] - target[dec];
    Coords<Scalar> next = cur;
    // Finalize the smaller side exactly so every step retires a coordinate.
    if (need <= have) {
      next[inc] = target[inc];
      next[dec] = cur[dec] - need;
    } else {
      next[dec] = target[dec];
      next[inc] = cur[inc] + have;
    }
    pieces.push_back(Segment<Scalar>{SimplexPoint<Scalar>{cur}, SimplexPoint<Scalar>{next}});
    cur = std::move(next);
  }
  if (!pieces.empty()) pieces.back().b = e.b;  // absorb rounding dust at the end
  return pieces;
}

/// Cuts an aligned segment at every threshold value its moving projections
/// cross, so each returned piece's projection interiors avoid all given
/// values. cut_values[l] lists the thresholds for coordinate l.
template <class Scalar>
std::vector<Segment<Scalar>> subdivide_at_thresholds(
    const Segment<Scalar>& e, const std::vector<std::vector<Scalar>>& cut_values) {
  auto al = alignment_of(e);
  if (!al) throw Error("UnalignedSegment", "subdivision requires an aligned segment");
  // Parameterize by u in [0,1]: x(u) = a + u (b - a).
  std::vector<Scalar> splits;
  for (int l : {al->i, al->j}) {
    if (l >= static_cast<int>(cut_values.size())) continue;
    Scalar delta = e.b.coords[l] - e.a.coords[l];
    for (const Scalar& v : cut_values[l]) {
      Scalar u = (v - e.a.coords[l]) / delta;
      if (u > Scalar(0) && u < Scalar(1)) splits.push_back(u);
    }
  }
  std::sort(splits.begin(), splits.end());
  splits.erase(std::unique(splits.begin(), splits.end()), splits.end());

  std::vector<Segment<Scalar>> pieces;
  auto point_at = [&](const Scalar& u) {
    Coords<Scalar> c = e.a.coords;
    for (int l : {al->i, al->j}) c[l] = e.a.coords[l] + u * (e.b.coords[l] - e.a.coords[l]);
    return SimplexPoint<Scalar>{std::move(c)};
  };
  SimplexPoint<Scalar> prev = e.a;
  for (const Scalar& u : splits) {
    SimplexPoint<Scalar> next = point_at(u);
    pieces.push_back(Segment<Scalar>{prev, next});
    prev = std::move(next);
  }
  pieces.push_back(Segment<Scalar>{prev, e.b});
  return pieces;
}

template <class Scalar>
SimplexPoint<double> to_double(const SimplexPoint<Scalar>& p) {
  Coords<double> c(p.k());
  for (int i = 0; i < p.k(); ++i) {
    if constexpr (ScalarTraits<Scalar>::exact)
      c[i] = p.coords[i].to_double();
    else
      c[i] = p.coords[i];
  }
  return SimplexPoint<double>{std::move(c)};
}

}  // namespace mwcut

#endif  // MWCUT_SIMPLEX_HPP_
