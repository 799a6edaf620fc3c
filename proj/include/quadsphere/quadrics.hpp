#pragma once

#include <utility>
#include <vector>

#include "quadsphere/linalg.hpp"
#include "quadsphere/veronese.hpp"

namespace qs {

/// Complex symmetric (d+1)x(d+1) matrix encoding the quadric that cuts the
/// span of a degree-d curve. Stored exactly symmetric.
struct SymmetricQuadric {
  int d = 1;
  Matrix S;

  SymmetricQuadric() : S(Matrix::Zero(2, 2)) {}
  SymmetricQuadric(int degree, Matrix s) : d(degree), S(symmetrize(s)) {
    require(degree >= 1, "SymmetricQuadric: degree must be positive");
    require(s.rows() == degree + 1 && s.cols() == degree + 1,
            "SymmetricQuadric: size must be degree + 1");
    require_finite(s, "SymmetricQuadric");
  }

  static SymmetricQuadric zero(int degree) {
    return SymmetricQuadric(degree, Matrix::Zero(degree + 1, degree + 1));
  }
};

/// Value of the quadric on the p-th harmonic-sequence member at z.
inline Complex containment_residual(const Matrix& s, int d, int p, Complex z) {
  require(s.rows() == d + 1 && s.cols() == d + 1, "containment_residual: size mismatch");
  Vector zv = veronese_member(d, p, z);
  return zv.transpose() * s * zv;
}

inline Complex containment_residual(const SymmetricQuadric& q, int p, Complex z) {
  return containment_residual(q.S, q.d, p, z);
}

namespace detail {

/// One step of the Cayley omega process on a bihomogeneous polynomial of
/// bidegree (deg, deg) in (u, v) x (u~, v~). Coefficients are indexed by the
/// degrees (alpha, beta) of v and v~; u-degrees follow by homogeneity.
inline Matrix omega_step(const Matrix& c, int deg) {
  Matrix out = Matrix::Zero(deg, deg);
  for (int alpha = 0; alpha < deg; ++alpha) {
    for (int beta = 0; beta < deg; ++beta) {
      Complex acc(0, 0);
      if (beta + 1 <= deg) acc += c(alpha, beta + 1) * double((deg - alpha) * (beta + 1));
      if (alpha + 1 <= deg) acc -= c(alpha + 1, beta) * double((alpha + 1) * (deg - beta));
      out(alpha, beta) = acc;
    }
  }
  return out;
}

}  // namespace detail

/// Coefficients of the projection of a symmetric matrix onto its spin
/// (d - 2k) component, as the 2d - 4k + 1 coefficients of a binary form in
/// (u, v). Computed with 2k omega steps on the double form
/// F = Z_d(u,v)^T S Z_d(u~,v~) followed by restriction to the diagonal.
inline Vector cg_component(const Matrix& s, int d, int k) {
  require(s.rows() == d + 1 && s.cols() == d + 1, "cg_component: size mismatch");
  require(k >= 0 && 2 * k <= d, "cg_component: component index out of range");
  Matrix c(d + 1, d + 1);
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j <= d; ++j) c(i, j) = s(i, j) * sqrt_binomial(d, i) * sqrt_binomial(d, j);
  int deg = d;
  for (int step = 0; step < 2 * k; ++step) {
    c = detail::omega_step(c, deg);
    --deg;
  }
  Vector out = Vector::Zero(2 * deg + 1);
  for (int alpha = 0; alpha <= deg; ++alpha)
    for (int beta = 0; beta <= deg; ++beta) out[alpha + beta] += c(alpha, beta);
  return out;
}

/// Real-linear constraint system on the coordinates (Re s_ij, Im s_ij),
/// i <= j, cutting out the quadrics that contain Z_{d,0}, ..., Z_{d,p}.
/// Two real rows per coefficient of each spin component k = 0..p; rows are
/// normalized to unit length.
struct ConstraintSystem {
  int d = 1;
  int p = 0;
  RealMatrix rows;

  Index unknowns() const { return rows.cols(); }

  static Index coordinate_index(int d, int i, int j) {
    // Upper-triangle row-major packing.
    return i * (d + 1) - i * (i - 1) / 2 + (j - i);
  }

  /// Pack a symmetric matrix into the real coordinate vector.
  RealVector coordinates(const Matrix& s) const {
    const Index n = (d + 1) * (d + 2) / 2;
    RealVector x(2 * n);
    for (int i = 0; i <= d; ++i) {
      for (int j = i; j <= d; ++j) {
        Index idx = coordinate_index(d, i, j);
        x[2 * idx] = s(i, j).real();
        x[2 * idx + 1] = s(i, j).imag();
      }
    }
    return x;
  }

  Matrix unpack(const RealVector& x) const {
    Matrix s(d + 1, d + 1);
    for (int i = 0; i <= d; ++i) {
      for (int j = i; j <= d; ++j) {
        Index idx = coordinate_index(d, i, j);
        s(i, j) = Complex(x[2 * idx], x[2 * idx + 1]);
        s(j, i) = s(i, j);
      }
    }
    return s;
  }

  /// Largest absolute row value on S (rows are unit-normalized).
  double residual(const Matrix& s) const {
    require(s.rows() == d + 1 && s.cols() == d + 1, "ConstraintSystem: size mismatch");
    if (rows.rows() == 0) return 0.0;
    return (rows * coordinates(s)).cwiseAbs().maxCoeff();
  }
};

/// Assemble the membership system for (d, p); see ConstraintSystem.
inline ConstraintSystem membership_system(int d, int p) {
  require(d >= 1 && d <= kMaxDegree, "membership_system: degree out of range");
  require(p >= 0 && 2 * p <= d, "membership_system: p out of range");
  const Index n = (d + 1) * (d + 2) / 2;
  Index row_count = 0;
  for (int k = 0; k <= p; ++k) row_count += 2 * d - 4 * k + 1;

  ConstraintSystem sys;
  sys.d = d;
  sys.p = p;
  sys.rows = RealMatrix::Zero(2 * row_count, 2 * n);

  // Complex coefficient of each row on each basis matrix, by linearity.
  Index complex_row = 0;
  for (int k = 0; k <= p; ++k) {
    const int coeffs = 2 * d - 4 * k + 1;
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(coeffs, n);
    for (int i = 0; i <= d; ++i) {
      for (int j = i; j <= d; ++j) {
        Matrix basis = Matrix::Zero(d + 1, d + 1);
        basis(i, j) = 1;
        basis(j, i) = 1;
        block.col(ConstraintSystem::coordinate_index(d, i, j)) = cg_component(basis, d, k);
      }
    }
    for (int m = 0; m < coeffs; ++m, ++complex_row) {
      for (Index col = 0; col < n; ++col) {
        Complex c = block(m, col);
        // Row pair for the real and imaginary part of the equation.
        sys.rows(2 * complex_row, 2 * col) = c.real();
        sys.rows(2 * complex_row, 2 * col + 1) = -c.imag();
        sys.rows(2 * complex_row + 1, 2 * col) = c.imag();
        sys.rows(2 * complex_row + 1, 2 * col + 1) = c.real();
      }
    }
  }
  for (Index r = 0; r < sys.rows.rows(); ++r) {
    double len = sys.rows.row(r).norm();
    if (len > 0) sys.rows.row(r) /= len;
  }
  return sys;
}

/// Threshold factor for numeric rank decisions on constraint systems.
inline constexpr double kRankThreshold = 1e-8;

inline Index real_rank(const RealMatrix& m, double threshold = kRankThreshold) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<RealMatrix> dec(m);
  const auto& sv = dec.singularValues();
  double cutoff = threshold * sv[0];
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv[i] > cutoff) ++rank;
  return rank;
}

/// Real dimension of the solution space of the membership system.
inline Index kernel_dimension(int d, int p) {
  ConstraintSystem sys = membership_system(d, p);
  return sys.unknowns() - real_rank(sys.rows);
}

/// Orthonormal basis of the numeric null space, unpacked to symmetric
/// matrices. The real span of the basis is the full solution space.
inline std::vector<Matrix> kernel_basis(int d, int p) {
  ConstraintSystem sys = membership_system(d, p);
  Eigen::JacobiSVD<RealMatrix> dec(sys.rows, Eigen::ComputeFullV);
  const auto& sv = dec.singularValues();
  double cutoff = sv.size() ? kRankThreshold * sv[0] : 0.0;
  std::vector<Matrix> basis;
  for (Index i = 0; i < sys.unknowns(); ++i) {
    if (i < sv.size() && sv[i] > cutoff) continue;
    basis.push_back(sys.unpack(dec.matrixV().col(i)));
  }
  return basis;
}

/// Verdict and diagnostics of the membership test for S_{d,n,p}.
struct MembershipReport {
  bool member = false;
  bool constraints_ok = false;
  bool bound_ok = false;
  bool multiplicity_ok = false;
  double system_residual = 0.0;
  double max_singular_value = 0.0;
  Index one_multiplicity = 0;
  Index required_multiplicity = 0;
};

/// S belongs to S_{d,n,p} when it solves the membership system, its largest
/// singular value is at most 1, and (for n < 2d+1) the singular value 1 has
/// multiplicity at least 2d+1-n.
inline MembershipReport is_member_S(const Matrix& s, int d, int n, int p,
                                    double tol = kDefaultTol, double cluster_tol = kClusterTol) {
  require(n >= d && n <= 2 * d + 1, "is_member_S: n out of range");
  require(s.rows() == d + 1 && s.cols() == d + 1, "is_member_S: size mismatch");
  require(p >= 0 && p <= d, "is_member_S: p out of range");
  // Conjugating the ambient space swaps the sequence index p with d - p and
  // the quadric with its conjugate.
  if (2 * p > d) return is_member_S(s.conjugate(), d, n, d - p, tol, cluster_tol);
  MembershipReport rep;
  ConstraintSystem sys = membership_system(d, p);
  rep.system_residual = sys.residual(s);
  rep.constraints_ok = rep.system_residual <= tol * norm_scale(s);

  RealVector sv = svd(s).spectrum.values;
  rep.max_singular_value = sv[sv.size() - 1];
  rep.bound_ok = rep.max_singular_value <= 1.0 + tol;

  for (Index i = 0; i < sv.size(); ++i)
    if (std::abs(sv[i] - 1.0) <= cluster_tol) ++rep.one_multiplicity;
  rep.required_multiplicity = std::max<Index>(0, 2 * d + 1 - n);
  rep.multiplicity_ok = rep.one_multiplicity >= rep.required_multiplicity;

  rep.member = rep.constraints_ok && rep.bound_ok && rep.multiplicity_ok;
  return rep;
}

inline MembershipReport is_member_S(const SymmetricQuadric& q, int n, int p,
                                    double tol = kDefaultTol, double cluster_tol = kClusterTol) {
  return is_member_S(q.S, q.d, n, p, tol, cluster_tol);
}

/// Admissible singular-value vectors of (d+1)-planes in C^{n+1}:
/// 0 <= sigma_0 <= ... <= sigma_d <= 1 with sigma_{n-d} = ... = sigma_d = 1.
inline bool theta_membership(const RealVector& sigma, int d, int n, double tol = kDefaultTol) {
  require(sigma.size() == d + 1, "theta_membership: vector must have length d + 1");
  if (sigma[0] < -tol) return false;
  for (Index i = 0; i + 1 < sigma.size(); ++i)
    if (sigma[i] > sigma[i + 1] + tol) return false;
  if (sigma[d] > 1.0 + tol) return false;
  for (int j = std::max(0, n - d); j <= d; ++j)
    if (std::abs(sigma[j] - 1.0) > tol) return false;
  return true;
}

/// Quadric generators of the tangent developable of the degree-d curve:
/// Gamma_{a,b} = Delta_{a+2,b} - 2 Delta_{a+1,b+1} + Delta_{a,b+2}, where
/// Delta_{a,b} are the 2x2 minors of the Hankel matrix in coordinates
/// rescaled so the curve becomes the plain monomial one; with the
/// binomial-weighted basis used here that is w_i = z_i / sqrt(C(d,i)).
/// Symmetrized; pairs with a < b (Gamma is antisymmetric in (a,b) and
/// vanishes on the diagonal).
inline std::vector<SymmetricQuadric> tangent_developable_generators(int d) {
  require(d >= 3 && d <= kMaxDegree, "tangent_developable_generators: degree must be >= 3");
  auto add_delta = [d](Matrix& m, int a, int b, double weight) {
    // Delta_{a,b} = w_a w_{b+1} - w_{a+1} w_b.
    m(a, b + 1) += 0.5 * weight / (sqrt_binomial(d, a) * sqrt_binomial(d, b + 1));
    m(b + 1, a) += 0.5 * weight / (sqrt_binomial(d, a) * sqrt_binomial(d, b + 1));
    m(a + 1, b) -= 0.5 * weight / (sqrt_binomial(d, a + 1) * sqrt_binomial(d, b));
    m(b, a + 1) -= 0.5 * weight / (sqrt_binomial(d, a + 1) * sqrt_binomial(d, b));
  };
  std::vector<SymmetricQuadric> out;
  for (int a = 0; a <= d - 3; ++a) {
    for (int b = a + 1; b <= d - 3; ++b) {
      Matrix m = Matrix::Zero(d + 1, d + 1);
      add_delta(m, a + 2, b, 1.0);
      add_delta(m, a + 1, b + 1, -2.0);
      add_delta(m, a, b + 2, 1.0);
      out.emplace_back(d, m);
    }
  }
  return out;
}

/// Real dimension of the span of a family of symmetric matrices together
/// with their imaginary multiples (i.e. of their complex span).
inline Index real_span_dimension(const std::vector<SymmetricQuadric>& family) {
  if (family.empty()) return 0;
  const int d = family.front().d;
  ConstraintSystem packer;
  packer.d = d;
  RealMatrix stack(2 * family.size(), (d + 1) * (d + 2));
  for (size_t i = 0; i < family.size(); ++i) {
    stack.row(2 * i) = packer.coordinates(family[i].S);
    stack.row(2 * i + 1) = packer.coordinates(Complex(0, 1) * family[i].S);
  }
  return real_rank(stack);
}

}  // namespace qs
