#pragma once

#include <random>
#include <sstream>
#include <vector>

#include "quadsphere/quadrics.hpp"

namespace qs {

/// Orthonormal frame E of a (d+1)-plane in C^{n+1} together with the curve
/// data (d, n, p); the minimal sphere is z -> E * Z_{d,p}(z).
struct SphereFrame {
  int d = 1;
  int n = 3;
  int p = 0;
  Matrix E;

  SphereFrame() = default;
  SphereFrame(int d_, int n_, int p_, Matrix e, double tol = kDefaultTol)
      : d(d_), n(n_), p(p_), E(std::move(e)) {
    require(d >= 1 && d <= n && n <= 2 * d + 1, "SphereFrame: need d <= n <= 2d+1");
    require(p >= 0 && p <= d, "SphereFrame: p out of range");
    require(E.rows() == n + 1 && E.cols() == d + 1, "SphereFrame: frame shape mismatch");
    require_finite(E, "SphereFrame");
    require((E.adjoint() * E - Matrix::Identity(d + 1, d + 1)).norm() <= 1e3 * tol,
            "SphereFrame: columns are not orthonormal");
  }

  /// Quadric matrix transpose(E) * E cut out by the ambient hyperquadric.
  Matrix quadric() const { return symmetrize(E.transpose() * E); }

  /// Unit-norm curve point at z (any z, chart swap near infinity).
  Vector point(Complex z) const { return E * veronese_unit(d, p, z); }
};

/// Column-orthonormal (n+1) x (d+1) matrix V with transpose(V) V = diag(sigma),
/// built from the angle blocks [cos(a); i sin(a)] of the spectrum, with an
/// identity block on the singular value 1 when n < 2d+1.
inline Matrix v_sigma(const SingularSpectrum& sp, int d, int n, double tol = kDefaultTol,
                      double cluster_tol = kClusterTol) {
  require(sp.size() == d + 1, "v_sigma: spectrum must have d + 1 values");
  require(n >= d, "v_sigma: need n >= d");
  for (Index i = 0; i < sp.size(); ++i) {
    require(sp.values[i] >= -tol && sp.values[i] <= 1.0 + tol,
            "v_sigma: singular values must lie in [0, 1]");
  }
  const int l = 2 * d + 1 - n;
  Matrix v = Matrix::Zero(n + 1, d + 1);

  // Tail indices within cluster tolerance of 1; they make up the value-1
  // block when the target space is too small for the generic shape.
  Index rm = 0;
  for (Index i = 0; i < sp.size(); ++i)
    if (std::abs(sp.values[i] - 1.0) <= cluster_tol) ++rm;

  const Index j_cols = (l > 0) ? (d + 1 - rm) : (d + 1);
  if (l > 0 && rm < l) {
    std::ostringstream msg;
    msg << "v_sigma: invalid spectrum, multiplicity " << rm << " of singular value 1 is below "
        << l << " required for n = " << n;
    throw InvalidInputError(msg.str());
  }

  Index row = 0;
  for (const Cluster& c : sp.clusters) {
    Index begin = c.begin;
    Index len = std::min(c.begin + c.size, j_cols) - begin;
    if (len <= 0) break;
    for (Index k = 0; k < len; ++k) {
      double a = sp.angles[begin + k];
      v(row + k, begin + k) = std::cos(a);
      v(row + len + k, begin + k) = Complex(0, std::sin(a));
    }
    row += 2 * len;
  }
  if (l > 0) v.block(row, j_cols, rm, rm) = Matrix::Identity(rm, rm);
  return v;
}

struct ConstructOptions {
  double tol = kDefaultTol;
  double cluster_tol = kClusterTol;
};

/// Build the frame E = V_sigma * U from the Takagi factorization
/// S = transpose(U) Sigma U of a member of S_{d,n,p}.
inline SphereFrame build_sphere(const SymmetricQuadric& q, int n, int p,
                                ConstructOptions opts = {}) {
  MembershipReport rep = is_member_S(q, n, p, opts.tol, opts.cluster_tol);
  if (!rep.member) {
    std::ostringstream msg;
    msg << "build_sphere: rejected input, S is not a member of S_{" << q.d << "," << n << "," << p
        << "}:";
    if (!rep.constraints_ok) msg << " containment residual " << rep.system_residual << ";";
    if (!rep.bound_ok) msg << " largest singular value " << rep.max_singular_value << " > 1;";
    if (!rep.multiplicity_ok)
      msg << " singular value 1 multiplicity " << rep.one_multiplicity << " < "
          << rep.required_multiplicity << ";";
    throw InvalidInputError(msg.str());
  }
  TakagiFactorization fac = takagi(q.S, {opts.tol, opts.cluster_tol});
  Matrix v = v_sigma(fac.spectrum, q.d, n, opts.tol, opts.cluster_tol);
  SphereFrame frame(q.d, n, p, v * fac.U, opts.tol);
  // The clamp of near-1 values onto the identity block can move the product
  // by up to the cluster tolerance.
  double slack = std::max(opts.tol * norm_scale(q.S), opts.cluster_tol);
  if ((frame.quadric() - q.S).norm() > slack)
    throw NumericError("build_sphere: frame quadric drifted from the input");
  return frame;
}

inline SphereFrame build_sphere(const Matrix& s, int d, int n, int p, ConstructOptions opts = {}) {
  return build_sphere(SymmetricQuadric(d, s), n, p, opts);
}

/// Deterministic z-sample used by the verification report: a structured set,
/// seeded points in the disk |z| <= 3, and chart-swapped points near infinity.
inline std::vector<Complex> verification_sample() {
  std::vector<Complex> pts = {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}, {2, 0}, {1, 1}};
  std::mt19937_64 rng(0x7ad1a5u);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  while (pts.size() < 201) {
    Complex z(unif(rng), unif(rng));
    if (std::abs(z) <= 3.0) pts.push_back(z);
  }
  std::uniform_real_distribution<double> angle(0.0, 2 * EIGEN_PI);
  for (int k = 0; k < 10; ++k) {
    double radius = std::pow(10.0, 3.0 + 0.5 * k);
    pts.push_back(std::polar(radius, angle(rng)));
  }
  return pts;
}

/// Verification report of a sphere frame.
struct SphereVerification {
  double orthonormality_residual = 0.0;
  double max_containment_residual = 0.0;
  RealVector quadric_singular_values;
  Index one_multiplicity = 0;
  Index expected_one_multiplicity = 0;
  bool linearly_full = false;

  bool passed(double tol) const {
    return orthonormality_residual <= tol && max_containment_residual <= tol;
  }
};

/// Check frame orthonormality, sampled containment of the curve in the
/// hyperquadric, and linear fullness (the singular value 1 of the plane
/// quadric has multiplicity exactly max(0, 2d+1-n)).
inline SphereVerification verify_sphere(const SphereFrame& f, double cluster_tol = kClusterTol) {
  SphereVerification rep;
  rep.orthonormality_residual =
      (f.E.adjoint() * f.E - Matrix::Identity(f.d + 1, f.d + 1)).norm();
  for (Complex z : verification_sample()) {
    Vector w = f.point(z);
    double r = std::abs(Complex(w.transpose() * w));
    rep.max_containment_residual = std::max(rep.max_containment_residual, r);
  }
  rep.quadric_singular_values = svd(f.quadric()).spectrum.values;
  for (Index i = 0; i < rep.quadric_singular_values.size(); ++i)
    if (std::abs(rep.quadric_singular_values[i] - 1.0) <= cluster_tol) ++rep.one_multiplicity;
  rep.expected_one_multiplicity = std::max<Index>(0, 2 * f.d + 1 - f.n);
  rep.linearly_full = rep.one_multiplicity == rep.expected_one_multiplicity;
  return rep;
}

namespace detail {

/// Projective roots (a : b) of sum_l c_l a^(D-l) b^l = 0, via the companion
/// matrix of the dehomogenized polynomial; vanishing leading coefficients
/// contribute roots at infinity.
inline std::vector<std::pair<Complex, Complex>> binary_form_roots(const Vector& coeffs) {
  const double scale = coeffs.cwiseAbs().maxCoeff();
  std::vector<std::pair<Complex, Complex>> roots;
  if (scale == 0.0) return roots;
  Index degree = coeffs.size() - 1;
  while (degree > 0 && std::abs(coeffs[degree]) <= 1e-13 * scale) {
    roots.emplace_back(Complex(0, 0), Complex(1, 0));  // root at infinity
    --degree;
  }
  if (degree == 0) return roots;
  Matrix companion = Matrix::Zero(degree, degree);
  for (Index i = 0; i + 1 < degree; ++i) companion(i + 1, i) = 1.0;
  for (Index i = 0; i < degree; ++i) companion(i, degree - 1) = -coeffs[i] / coeffs[degree];
  Eigen::ComplexEigenSolver<Matrix> es(companion);
  for (Index i = 0; i < degree; ++i) {
    Complex t = es.eigenvalues()[i];
    double norm = std::sqrt(1.0 + std::norm(t));
    roots.emplace_back(Complex(1, 0) / norm, t / norm);
  }
  return roots;
}

}  // namespace detail

/// Normal form of a member of the holomorphic solution space under the
/// U(1) x SU(2) action: the spin-(d-2) component loses its leading
/// coefficient (killing the s11/s02 entries when d >= 3), the global phase
/// makes the first nonzero entry real nonnegative, and for d = 3 a residual
/// torus rotation also makes the (2,2) entry real nonnegative. Singular
/// values are untouched.
inline SymmetricQuadric normalize_representative(const SymmetricQuadric& q,
                                                 double tol = kDefaultTol) {
  const int d = q.d;
  ConstraintSystem sys = membership_system(d, 0);
  require(sys.residual(q.S) <= tol * norm_scale(q.S),
          "normalize_representative: S does not contain the curve");
  RealVector spectrum_before = svd(q.S).spectrum.values;

  Matrix s = q.S;
  const double scale = norm_scale(s);
  if (d >= 3) {
    Vector alpha = cg_component(s, d, 1);
    if (alpha.cwiseAbs().maxCoeff() > 1e-13 * scale) {
      // The congruence by rho(g) substitutes (conj(a)u + conj(b)v, -bu + av)
      // into the spin component, so its new leading coefficient is
      // sum_l alpha_l conj(a)^(2d-4-l) (-b)^l; kill it at a projective root
      // (A : B) via a = conj(A), b = -B.
      auto roots = detail::binary_form_roots(alpha);
      if (roots.empty())
        throw NumericError("normalize_representative: no admissible rotation found");
      double best_score = std::numeric_limits<double>::infinity();
      double best_tie = std::numeric_limits<double>::infinity();
      Matrix best;
      std::ostringstream tried;
      bool found = false;
      for (auto [cap_a, cap_b] : roots) {
        GroupElement g(std::conj(cap_a), -cap_b);
        Matrix cand = group_action(s, Complex(1, 0), g);
        Vector rotated = cg_component(cand, d, 1);
        double leading = std::abs(rotated[0]);
        tried << " root (" << cap_a << ", " << cap_b << ") leading " << leading << ";";
        if (leading > 1e-8 * scale) continue;
        double score = rotated.size() > 1 ? std::abs(rotated[1]) : 0.0;
        double tie = std::abs(cap_a) > 0 ? std::abs(cap_b / cap_a)
                                         : std::numeric_limits<double>::infinity();
        if (score < best_score - 1e-12 * scale ||
            (std::abs(score - best_score) <= 1e-12 * scale && tie < best_tie)) {
          best_score = score;
          best_tie = tie;
          best = cand;
          found = true;
        }
      }
      if (!found)
        throw NumericError("normalize_representative: all rotation candidates failed:" +
                           tried.str());
      s = best;
    }
  }

  if (d == 3) {
    // Global phase makes the (0,3) entry real nonnegative; the residual
    // torus rotation has weight 2 on the (2,2) entry and weight 0 on (0,3),
    // so it then fixes (2,2) without disturbing (0,3).
    if (std::abs(s(0, 3)) > 1e-14 * scale) s *= std::conj(s(0, 3)) / std::abs(s(0, 3));
    if (std::abs(s(2, 2)) > 1e-14 * scale) {
      double theta = -std::arg(s(2, 2)) / 2.0;
      s = group_action(s, Complex(1, 0), GroupElement(std::polar(1.0, theta), 0));
    }
  } else {
    [&] {
      for (int i = 0; i <= d; ++i) {
        for (int j = i; j <= d; ++j) {
          if (std::abs(s(i, j)) > 1e-12 * scale) {
            s *= std::conj(s(i, j)) / std::abs(s(i, j));
            return;
          }
        }
      }
    }();
  }

  SymmetricQuadric out(d, s);
  RealVector spectrum_after = svd(out.S).spectrum.values;
  if ((spectrum_before - spectrum_after).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw NumericError("normalize_representative: singular values moved");
  return out;
}

}  // namespace qs
