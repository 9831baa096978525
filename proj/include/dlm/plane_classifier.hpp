#pragma once

// Blind stream classifier. The machine keeps a segment (2-D) or a simplex of
// K points (K-D) on a hyperplane and moves the points toward each incoming
// event, the farther points moving more. The side of the hyperplane on which
// an event falls is the output channel.

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dlm/rng.hpp"
#include "dlm/vec.hpp"

namespace dlm {

enum class PointRule {
  /// v' = v + (1 - alpha) (y - v) |y - v|
  distance_weighted,
  /// v' = v + (1 - alpha) (y - v)
  linear,
};

template <std::size_t K>
VecK<K> move_support_point(const VecK<K>& v, const VecK<K>& y, double alpha, PointRule rule) {
  const VecK<K> d = y - v;
  const double w = rule == PointRule::distance_weighted ? norm(d) : 1.0;
  return v + scaled(d, (1.0 - alpha) * w);
}

struct SegmentState {
  Vec2 mid{0.0, 0.0};
  Vec2 dir{1.0, 0.0};
  double alpha = 0.99;

  /// mid = first event, dir = (1, 0).
  static SegmentState initial(const Vec2& first_event, double alpha);
};

struct SegmentStep {
  /// +1 when the event lies right of the directed line (including on it), -1 when left.
  int side;
  SegmentState next;
  /// True when the two updated support points coincided and dir was kept.
  bool degenerate;
};

/// Side of `y` relative to the line through `mid` along `dir`.
int segment_side(const Vec2& mid, const Vec2& dir, const Vec2& y);

/// Side is decided against the state before the update.
SegmentStep step_segment(const SegmentState& st, const Vec2& y, PointRule rule = PointRule::distance_weighted);

/// Angle in [0, 90] degrees between two undirected lines.
double line_angle_deg(const Vec2& a, const Vec2& b);

/// Sample n of the two rotating Gaussian clusters: centre
/// (cos (gamma n + s) pi, sin (gamma n + s) pi) with s a random bit, plus
/// isotropic noise of variance 1/2.
Vec2 generate_rotating_gaussians(double gamma, std::size_t n, Rng& rng);

struct PcaResult {
  /// Unit eigenvector of the largest covariance eigenvalue; sign is arbitrary.
  Vec2 principal;
  double lambda_major;
  double lambda_minor;
  /// Eigenvalue gap below 1e-9 of the trace: the principal direction is not meaningful.
  bool near_degenerate;
};

/// Throws std::invalid_argument for fewer than two points or identical points.
PcaResult pca_oracle(std::span<const Vec2> points);

// ---------------------------------------------------------------------------
// K-dimensional generalization.

/// Coordinates of K points of a unit-edge regular simplex centred at the
/// origin, expressed in K-1 orthonormal in-plane coordinates. Row k is point k.
/// Columns are orthogonal with squared norm 1/2.
template <std::size_t K>
std::array<std::array<double, K - 1>, K> simplex_coordinates() {
  std::array<std::array<double, K - 1>, K> s{};
  // Helmert basis of the zero-sum subspace, scaled so the edge is 1.
  for (std::size_t i = 1; i < K; ++i) {
    const double c = 1.0 / std::sqrt(2.0 * static_cast<double>(i * (i + 1)));
    for (std::size_t k = 0; k < i; ++k) s[k][i - 1] = c;
    s[i][i - 1] = -static_cast<double>(i) * c;
  }
  return s;
}

/// Orthonormalizes `vs` in order, projecting each vector out twice.
/// Returns std::nullopt if any vector's residual norm drops below `tol`.
template <std::size_t K, std::size_t M>
std::optional<std::array<VecK<K>, M>> modified_gram_schmidt(std::array<VecK<K>, M> vs, double tol = 1e-12) {
  for (std::size_t i = 0; i < M; ++i) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < i; ++k) vs[i] = vs[i] - scaled(vs[k], dot(vs[k], vs[i]));
    const double n = norm(vs[i]);
    if (!(n > tol)) return std::nullopt;
    vs[i] = scaled(vs[i], 1.0 / n);
  }
  return vs;
}

/// Determinant by Gaussian elimination with partial pivoting; columns given.
template <std::size_t K>
double determinant(std::array<VecK<K>, K> cols) {
  double det = 1.0;
  for (std::size_t c = 0; c < K; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < K; ++r)
      if (std::abs(cols[c][r]) > std::abs(cols[c][piv])) piv = r;
    if (cols[c][piv] == 0.0) return 0.0;
    if (piv != c) {
      for (auto& col : cols) std::swap(col[c], col[piv]);
      det = -det;
    }
    det *= cols[c][c];
    for (std::size_t r = c + 1; r < K; ++r) {
      const double f = cols[c][r] / cols[c][c];
      for (std::size_t cc = c; cc < K; ++cc) cols[cc][r] -= f * cols[cc][c];
    }
  }
  return det;
}

template <std::size_t K>
struct SimplexState {
  static_assert(K >= 2);
  VecK<K> mid{};
  /// Orthonormal in-plane directions.
  std::array<VecK<K>, K - 1> dirs{};
  double alpha = 0.99;

  /// mid = first event, directions = the first K-1 coordinate axes.
  static SimplexState initial(const VecK<K>& first_event, double alpha) {
    SimplexState st;
    st.mid = first_event;
    st.alpha = alpha;
    for (std::size_t i = 0; i + 1 < K; ++i) {
      st.dirs[i] = {};
      st.dirs[i][i] = 1.0;
    }
    return st;
  }

  std::array<VecK<K>, K> points() const {
    const auto s = simplex_coordinates<K>();
    std::array<VecK<K>, K> v;
    for (std::size_t k = 0; k < K; ++k) {
      v[k] = mid;
      for (std::size_t i = 0; i + 1 < K; ++i) v[k] = v[k] + scaled(dirs[i], s[k][i]);
    }
    return v;
  }

  /// Unit normal oriented so that det[normal, dirs...] > 0.
  VecK<K> normal() const {
    VecK<K> best{};
    double best_norm = -1.0;
    for (std::size_t e = 0; e < K; ++e) {
      VecK<K> r{};
      r[e] = 1.0;
      for (const auto& d : dirs) r = r - scaled(d, dot(d, r));
      const double n = norm(r);
      if (n > best_norm) {
        best_norm = n;
        best = scaled(r, 1.0 / n);
      }
    }
    std::array<VecK<K>, K> cols;
    cols[0] = best;
    for (std::size_t i = 0; i + 1 < K; ++i) cols[i + 1] = dirs[i];
    return determinant<K>(cols) < 0.0 ? scaled(best, -1.0) : best;
  }
};

template <std::size_t K>
struct SimplexStep {
  int side;
  SimplexState<K> next;
  bool degenerate;
};

/// +1 when det[y - mid, dirs...] >= 0. For K = 2 this matches segment_side.
template <std::size_t K>
int simplex_side(const SimplexState<K>& st, const VecK<K>& y) {
  std::array<VecK<K>, K> cols;
  cols[0] = y - st.mid;
  for (std::size_t i = 0; i + 1 < K; ++i) cols[i + 1] = st.dirs[i];
  return determinant<K>(cols) >= 0.0 ? +1 : -1;
}

template <std::size_t K>
SimplexStep<K> step_simplex(const SimplexState<K>& st, const VecK<K>& y, PointRule rule = PointRule::distance_weighted) {
  if (!all_finite(y)) throw std::invalid_argument("step_simplex: non-finite event");
  SimplexStep<K> out{simplex_side(st, y), st, false};

  auto v = st.points();
  for (auto& p : v) p = move_support_point(p, y, st.alpha, rule);

  VecK<K> mid{};
  for (const auto& p : v) mid = mid + p;
  out.next.mid = scaled(mid, 1.0 / static_cast<double>(K));

  // Least-squares fit of the directions to the moved points; the simplex
  // coordinate columns have squared norm 1/2.
  const auto s = simplex_coordinates<K>();
  std::array<VecK<K>, K - 1> raw{};
  for (std::size_t i = 0; i + 1 < K; ++i)
    for (std::size_t k = 0; k < K; ++k) raw[i] = raw[i] + scaled(v[k], 2.0 * s[k][i]);

  if (auto ortho = modified_gram_schmidt(raw)) {
    out.next.dirs = *ortho;
  } else {
    out.degenerate = true;
  }
  return out;
}

}  // namespace dlm
