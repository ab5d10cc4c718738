#pragma once

// Sampled matrix curves: sampling a generator on a uniform grid, the Finsler
// length functional, constant-speed reparametrization and concatenation.

#include <cmath>
#include <vector>

#include "mingeo/spaces.hpp"

namespace mingeo {

struct SampledCurve {
  SpaceTag space;
  std::vector<double> grid;     // 0 = t_0 < ... < t_N = 1
  std::vector<Matrix> points;   // one per grid node

  size_t intervals() const { return grid.empty() ? 0 : grid.size() - 1; }
  const Matrix& front() const { return points.front(); }
  const Matrix& back() const { return points.back(); }
};

struct LengthReport {
  double length = 0.0;
  std::vector<double> speed_profile;  // per-interval Finsler speed
  double max_speed_deviation = 0.0;   // max |speed - length|; the mean speed on [0,1] is the length
};

/// Checks the SampledCurve structural invariants (not the on-space ones).
inline void require_curve_shape(const SampledCurve& c) {
  if (c.grid.size() < 2 || c.grid.size() != c.points.size()) {
    throw Error(ErrorCode::InvalidArgument, "curve needs matching grid and points with at least 2 nodes");
  }
  if (c.grid.front() != 0.0 || c.grid.back() != 1.0) {
    throw Error(ErrorCode::InvalidArgument, "curve grid must start at 0 and end at 1");
  }
  for (size_t k = 1; k < c.grid.size(); ++k) {
    if (!(c.grid[k] > c.grid[k - 1])) throw Error(ErrorCode::InvalidArgument, "curve grid is not strictly increasing");
  }
  const Index n = c.points.front().rows();
  for (const Matrix& m : c.points) {
    if (m.rows() != n || m.cols() != n) throw Error(ErrorCode::DimensionMismatch, "curve points differ in size");
  }
}

inline std::vector<double> uniform_grid(int n_steps) {
  std::vector<double> grid(static_cast<size_t>(n_steps) + 1);
  for (int k = 0; k <= n_steps; ++k) grid[static_cast<size_t>(k)] = static_cast<double>(k) / n_steps;
  grid.back() = 1.0;
  return grid;
}

/// Evaluates `g` on the uniform grid with `n_steps` intervals.
inline SampledCurve sample(const CurveGenerator& g, int n_steps) {
  if (n_steps < 1) throw Error(ErrorCode::InvalidArgument, "n_steps must be positive");
  SampledCurve c{g.space, uniform_grid(n_steps), {}};
  c.points.reserve(c.grid.size());
  for (double t : c.grid) {
    Matrix m = g(t);
    try {
      require_point(g.space, m, tol::kRepairFactor);
    } catch (const Error& e) {
      throw Error(ErrorCode::OffSpacePoint, "sample at t=" + std::to_string(t) + ": " + e.what());
    }
    c.points.push_back(std::move(m));
  }
  return c;
}

/// Length contribution of one grid interval: the chord norm for H(n), U(n)
/// and the Grassmannian; the exact geodesic distance ||log(a^{-1/2} b a^{-1/2})||_p
/// for Gl(n)+.
inline double interval_length(SpaceTag space, const Matrix& a, const Matrix& b, const SchattenIndex& p) {
  if (space == SpaceTag::Positive) {
    return dist_positive(PositiveDefiniteMatrix::trusted(a), PositiveDefiniteMatrix::trusted(b), p);
  }
  return schatten_norm(b - a, p);
}

inline LengthReport length(const SampledCurve& c, const SchattenIndex& p) {
  require_curve_shape(c);
  LengthReport r;
  r.speed_profile.reserve(c.intervals());
  for (size_t k = 0; k < c.intervals(); ++k) {
    const double piece = interval_length(c.space, c.points[k], c.points[k + 1], p);
    r.length += piece;
    r.speed_profile.push_back(piece / (c.grid[k + 1] - c.grid[k]));
  }
  for (double s : r.speed_profile) r.max_speed_deviation = std::max(r.max_speed_deviation, std::abs(s - r.length));
  return r;
}

/// Point at fraction s along the geodesic piece from a to b.
inline Matrix interpolate(SpaceTag space, const Matrix& a, const Matrix& b, double s) {
  if (s <= 0.0) return a;
  if (s >= 1.0) return b;
  switch (space) {
    case SpaceTag::Hermitian: return a + s * (b - a);
    case SpaceTag::Unitary: return geodesic_unitary(UnitaryMatrix::trusted(a), UnitaryMatrix::trusted(b))(s);
    case SpaceTag::Positive:
      return geodesic_positive(PositiveDefiniteMatrix::trusted(a), PositiveDefiniteMatrix::trusted(b))(s);
    case SpaceTag::Grassmann:
      return geodesic_grassmann(OrthogonalProjection::trusted(a), OrthogonalProjection::trusted(b))(s);
  }
  return a;
}

/// Resamples c at equally spaced arclength, moving along the geodesic piece of
/// each interval. Keeps the number of intervals.
inline SampledCurve reparametrize_constant_speed(const SampledCurve& c, const SchattenIndex& p) {
  require_curve_shape(c);
  const size_t n = c.intervals();
  std::vector<double> pieces(n);
  std::vector<double> cumulative(n + 1, 0.0);
  for (size_t k = 0; k < n; ++k) {
    pieces[k] = interval_length(c.space, c.points[k], c.points[k + 1], p);
    cumulative[k + 1] = cumulative[k] + pieces[k];
  }
  const double total = cumulative[n];
  if (!(total > 0.0)) throw Error(ErrorCode::ZeroLength, "cannot reparametrize a curve of zero length");

  SampledCurve out{c.space, uniform_grid(static_cast<int>(n)), {}};
  out.points.reserve(n + 1);
  out.points.push_back(c.points.front());
  size_t k = 0;
  for (size_t j = 1; j < n; ++j) {
    const double target = total * static_cast<double>(j) / static_cast<double>(n);
    while (k + 1 < n && cumulative[k + 1] < target) ++k;
    const double s = pieces[k] > 0.0 ? (target - cumulative[k]) / pieces[k] : 0.0;
    out.points.push_back(interpolate(c.space, c.points[k], c.points[k + 1], std::clamp(s, 0.0, 1.0)));
  }
  out.points.push_back(c.points.back());
  return out;
}

/// c1 followed by c2, each keeping its own speed profile shape; the joint sits
/// at t = L(c1) / (L(c1) + L(c2)).
inline SampledCurve concatenate(const SampledCurve& c1, const SampledCurve& c2, const SchattenIndex& p) {
  require_curve_shape(c1);
  require_curve_shape(c2);
  if (c1.space != c2.space) throw Error(ErrorCode::SpaceMismatch, "curves live in different spaces");
  require_same_dim(c1.back(), c2.front());
  const double scale = std::max({1.0, max_abs(c1.back()), max_abs(c2.front())});
  if (max_abs(c1.back() - c2.front()) > 1e-8 * scale) {
    throw Error(ErrorCode::EndpointMismatch, "end of first curve differs from start of second");
  }
  const double l1 = length(c1, p).length;
  const double l2 = length(c2, p).length;
  if (l1 == 0.0 && l2 > 0.0) return c2;
  if (l2 == 0.0 && l1 > 0.0) return c1;
  const double joint = (l1 + l2) > 0.0 ? l1 / (l1 + l2) : 0.5;

  SampledCurve out{c1.space, {}, {}};
  for (size_t k = 0; k < c1.grid.size(); ++k) {
    out.grid.push_back(joint * c1.grid[k]);
    out.points.push_back(c1.points[k]);
  }
  out.grid.back() = joint;
  for (size_t k = 1; k < c2.grid.size(); ++k) {
    out.grid.push_back(joint + (1.0 - joint) * c2.grid[k]);
    out.points.push_back(c2.points[k]);
  }
  out.grid.back() = 1.0;
  require_curve_shape(out);
  return out;
}

/// Applies f to every point, keeping the grid.
template <class F>
SampledCurve map_points(const SampledCurve& c, SpaceTag target, F&& f) {
  SampledCurve out{target, c.grid, {}};
  out.points.reserve(c.points.size());
  for (const Matrix& m : c.points) out.points.push_back(f(m));
  return out;
}

}  // namespace mingeo
