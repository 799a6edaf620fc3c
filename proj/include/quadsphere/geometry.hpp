#pragma once

#include <limits>
#include <random>
#include <string>
#include <vector>

#include "quadsphere/construct.hpp"

namespace qs {

/// Metric factor and the two tangent projections of the sphere E Z_{d,p}:
/// X along the z-derivative direction, Y along the zbar one, both orthogonal
/// to the unit lift. Y vanishes identically for p = 0 and X for p = d.
struct TangentData {
  double lambda = 0.0;
  Vector X;
  Vector Y;
};

inline TangentData tangent_data(const SphereFrame& f, Complex z) {
  TangentData out;
  out.lambda = metric_factor(f.d, f.p, z);
  const double norm_p = std::sqrt(veronese_norm_squared(f.d, f.p, z));
  out.X = f.E * veronese_member(f.d, f.p + 1, z) / (out.lambda * norm_p);
  if (f.p >= 1) {
    const double norm_pm1_sq = veronese_norm_squared(f.d, f.p - 1, z);
    out.Y = -(norm_p / (out.lambda * norm_pm1_sq)) * (f.E * veronese_member(f.d, f.p - 1, z));
  } else {
    out.Y = Vector::Zero(f.n + 1);
  }
  return out;
}

/// Global invariants tau_X = |X^T X|, tau_Y = |Y^T Y|, tau_XY = |X^T Y|.
struct TauInvariants {
  double tau_x = 0.0;
  double tau_y = 0.0;
  double tau_xy = 0.0;
};

inline TauInvariants tau_invariants(const TangentData& t) {
  TauInvariants out;
  out.tau_x = std::abs(Complex(t.X.transpose() * t.X));
  out.tau_y = std::abs(Complex(t.Y.transpose() * t.Y));
  out.tau_xy = std::abs(Complex(t.X.transpose() * t.Y));
  return out;
}

inline TauInvariants tau_invariants(const SphereFrame& f, Complex z) {
  return tau_invariants(tangent_data(f, z));
}

/// Squared norm of the second fundamental form at z, from
///   ||B||^2 = 2 + 6 cos^2(theta) - 2K - 4 tau_X^2 - 4 tau_Y^2 + 8 tau_XY^2.
/// For frames inside the quadric tau_Y and tau_XY vanish and the value
/// reduces to -2K + 2 + 6 cos^2(theta) - 4 tau_X^2; both routes are
/// evaluated and must agree.
inline double second_fundamental_norm(const SphereFrame& f, Complex z) {
  auto [curv, cos_theta] = curvature_and_angle(f.d, f.p);
  TauInvariants tau = tau_invariants(f, z);
  double general = 2 + 6 * cos_theta * cos_theta - 2 * curv - 4 * tau.tau_x * tau.tau_x -
                   4 * tau.tau_y * tau.tau_y + 8 * tau.tau_xy * tau.tau_xy;
  double reduced = -2 * curv + 2 + 6 * cos_theta * cos_theta - 4 * tau.tau_x * tau.tau_x;
  if (std::abs(general - reduced) > 1e-8 * (1.0 + std::abs(general)))
    throw NumericError("second_fundamental_norm: frame is not inside the quadric");
  return general;
}

/// Numeric metric factor squared from fourth-order central differences of
/// the unit lift: lambda^2 = |P dz f|^2 + |P dzbar f|^2 with P the
/// projection orthogonal to the lift.
inline double metric_factor_squared_numeric(const SphereFrame& f, Complex z, double h = 1e-4) {
  auto lift = [&](Complex at) {
    Vector v = f.E * veronese_member(f.d, f.p, at);
    return Vector(v / v.norm());
  };
  auto derivative = [&](Complex dir) {
    return (lift(z - 2.0 * h * dir) - 8.0 * lift(z - h * dir) + 8.0 * lift(z + h * dir) -
            lift(z + 2.0 * h * dir)) /
           (12.0 * h);
  };
  Vector dx = derivative(Complex(1, 0));
  Vector dy = derivative(Complex(0, 1));
  Vector dz = 0.5 * (dx - Complex(0, 1) * dy);
  Vector dzbar = 0.5 * (dx + Complex(0, 1) * dy);
  Vector center = lift(z);
  Vector pz = dz - center.dot(dz) * center;
  Vector pzbar = dzbar - center.dot(dzbar) * center;
  return pz.squaredNorm() + pzbar.squaredNorm();
}

/// Gaussian curvature K = -(2/lambda^2) d^2 log(lambda^2) / dz dzbar by
/// finite differences; independent of the closed-form constants.
inline double gaussian_curvature_numeric(const SphereFrame& f, Complex z, double h = 1e-2) {
  auto logl2 = [&](Complex at) { return std::log(metric_factor_squared_numeric(f, at)); };
  auto second = [&](Complex dir) {
    return (-logl2(z - 2.0 * h * dir) + 16.0 * logl2(z - h * dir) - 30.0 * logl2(z) +
            16.0 * logl2(z + h * dir) - logl2(z + 2.0 * h * dir)) /
           (12.0 * h * h);
  };
  double laplacian = second(Complex(1, 0)) + second(Complex(0, 1));
  return -0.5 * laplacian / metric_factor_squared_numeric(f, z);
}

enum class HomogeneityVerdict { Homogeneous, NonHomogeneous, NotApplicable };

struct HomogeneityReport {
  HomogeneityVerdict verdict = HomogeneityVerdict::NotApplicable;
  std::string detail;
  bool algebraic_member = false;  // next sequence member stays in the quadric
  double tau_x_spread = 0.0;
  double tau_x_max = 0.0;
};

/// Constancy thresholds: spread <= 1e-8 (relative) is constant, >= 1e-3 is
/// not; the gap triggers a denser resample and then a failure.
inline constexpr double kConstantSpread = 1e-8;
inline constexpr double kNonConstantSpread = 1e-3;

namespace detail {

inline std::pair<double, double> tau_x_spread(const SphereFrame& f, int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  int taken = 0;
  while (taken < count) {
    Complex z(unif(rng), unif(rng));
    if (std::abs(z) > 2.0) continue;
    double t = tau_invariants(f, z).tau_x;
    lo = std::min(lo, t);
    hi = std::max(hi, t);
    ++taken;
  }
  return {hi - lo, hi};
}

}  // namespace detail

/// Decide whether ||B||^2 (equivalently tau_X) is constant for the frame:
/// algebraically via membership of the next sequence member, and by sampled
/// tau_X spread; the two verdicts must agree.
inline HomogeneityReport homogeneity_test(const SphereFrame& f, double tol = kDefaultTol,
                                          double cluster_tol = kClusterTol) {
  HomogeneityReport rep;
  if (f.d < 3) {
    rep.detail = "norm of the second fundamental form is always constant for d <= 2";
    return rep;
  }
  if (f.p >= f.d / 2) {
    rep.detail = "criterion applies to 0 <= p < floor(d/2) only";
    return rep;
  }
  if (f.d % 2 == 0 && f.p == f.d / 2 - 1) {
    rep.detail = "even degree with p = d/2 - 1 is unconditionally constant";
    return rep;
  }

  rep.algebraic_member = is_member_S(f.quadric(), f.d, f.n, f.p + 1, tol, cluster_tol).member;

  auto [spread, top] = detail::tau_x_spread(f, 100, 0xe5a11u);
  bool constant = spread <= kConstantSpread * (1.0 + top);
  bool nonconstant = spread >= kNonConstantSpread;
  if (!constant && !nonconstant) {
    std::tie(spread, top) = detail::tau_x_spread(f, 1000, 0xe5a12u);
    constant = spread <= kConstantSpread * (1.0 + top);
    nonconstant = spread >= kNonConstantSpread;
    if (!constant && !nonconstant)
      throw NumericError("homogeneity_test: tau_X spread " + std::to_string(spread) +
                         " is in the undecidable band");
  }
  rep.tau_x_spread = spread;
  rep.tau_x_max = top;

  if (rep.algebraic_member != constant)
    throw NumericError("homogeneity_test: algebraic and sampled verdicts disagree");
  rep.verdict = constant ? HomogeneityVerdict::Homogeneous : HomogeneityVerdict::NonHomogeneous;
  return rep;
}

/// Per-point values of the geometric invariants.
struct GeometrySample {
  Complex z;
  double lambda = 0.0;
  double x_sq = 0.0;
  double y_sq = 0.0;
  double tau_x = 0.0;
  double tau_y = 0.0;
  double tau_xy = 0.0;
  double b_sq = 0.0;
};

struct GeometryReport {
  int d = 1, n = 3, p = 0;
  double curvature = 0.0;
  double cos_angle = 0.0;
  std::vector<GeometrySample> samples;
  double tau_x_min = 0.0, tau_x_max = 0.0;
  double b_sq_min = 0.0, b_sq_max = 0.0;
  double tau_y_max = 0.0, tau_xy_max = 0.0;
  bool b_sq_constant = false;
  HomogeneityReport homogeneity;
};

inline GeometryReport geometry_report(const SphereFrame& f, const std::vector<Complex>& points) {
  require(!points.empty(), "geometry_report: empty sample");
  GeometryReport rep;
  rep.d = f.d;
  rep.n = f.n;
  rep.p = f.p;
  std::tie(rep.curvature, rep.cos_angle) = curvature_and_angle(f.d, f.p);
  rep.tau_x_min = rep.b_sq_min = std::numeric_limits<double>::infinity();
  for (Complex z : points) {
    TangentData t = tangent_data(f, z);
    TauInvariants tau = tau_invariants(t);
    GeometrySample row;
    row.z = z;
    row.lambda = t.lambda;
    row.x_sq = t.X.squaredNorm();
    row.y_sq = t.Y.squaredNorm();
    row.tau_x = tau.tau_x;
    row.tau_y = tau.tau_y;
    row.tau_xy = tau.tau_xy;
    row.b_sq = second_fundamental_norm(f, z);
    rep.samples.push_back(row);
    rep.tau_x_min = std::min(rep.tau_x_min, row.tau_x);
    rep.tau_x_max = std::max(rep.tau_x_max, row.tau_x);
    rep.b_sq_min = std::min(rep.b_sq_min, row.b_sq);
    rep.b_sq_max = std::max(rep.b_sq_max, row.b_sq);
    rep.tau_y_max = std::max(rep.tau_y_max, row.tau_y);
    rep.tau_xy_max = std::max(rep.tau_xy_max, row.tau_xy);
  }
  rep.b_sq_constant =
      (rep.b_sq_max - rep.b_sq_min) <= kConstantSpread * (1.0 + std::abs(rep.b_sq_max));
  try {
    rep.homogeneity = homogeneity_test(f);
  } catch (const NumericError&) {
    rep.homogeneity.verdict = HomogeneityVerdict::NotApplicable;
    rep.homogeneity.detail = "verdicts inconclusive on this frame";
  }
  return rep;
}

inline std::vector<Complex> grid_sample(int per_side, double extent = 2.0) {
  require(per_side >= 1, "grid_sample: need a positive grid");
  std::vector<Complex> pts;
  pts.reserve(per_side * per_side);
  for (int i = 0; i < per_side; ++i) {
    for (int j = 0; j < per_side; ++j) {
      double x = per_side == 1 ? 0.0 : -extent + 2 * extent * i / (per_side - 1.0);
      double y = per_side == 1 ? 0.0 : -extent + 2 * extent * j / (per_side - 1.0);
      pts.emplace_back(x, y);
    }
  }
  return pts;
}

inline std::vector<Complex> random_sample(int count, unsigned seed, double radius = 2.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-radius, radius);
  std::vector<Complex> pts;
  while (static_cast<int>(pts.size()) < count) {
    Complex z(unif(rng), unif(rng));
    if (std::abs(z) <= radius) pts.push_back(z);
  }
  return pts;
}

}  // namespace qs
