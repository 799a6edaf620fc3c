#pragma once

#include <vector>

#include "quadsphere/core.hpp"

namespace qs {

/// Largest degree for which binomial coefficients are kept in exact integer
/// arithmetic before conversion to double.
inline constexpr int kMaxDegree = 60;

/// Exact binomial coefficient C(n, k) as a double (n <= kMaxDegree).
inline double binomial(int n, int k) {
  require(n >= 0 && n <= kMaxDegree, "binomial: degree out of range");
  if (k < 0 || k > n) return 0.0;
  // Pascal's triangle in 64-bit integers; C(60,30) still fits.
  static thread_local std::vector<std::vector<unsigned long long>> table;
  if (static_cast<int>(table.size()) <= n) {
    for (int r = static_cast<int>(table.size()); r <= kMaxDegree; ++r) {
      std::vector<unsigned long long> row(r + 1, 1ull);
      for (int c = 1; c < r; ++c) row[c] = table[r - 1][c - 1] + table[r - 1][c];
      table.push_back(std::move(row));
    }
  }
  return static_cast<double>(table[n][k]);
}

inline double sqrt_binomial(int n, int k) { return std::sqrt(binomial(n, k)); }

/// Affine-chart points farther out than this are rejected; the homogeneous
/// evaluation handles the neighbourhood of infinity.
inline constexpr double kAffineLimit = 1e8;

inline void check_affine(Complex z) {
  require(std::isfinite(z.real()) && std::isfinite(z.imag()), "veronese: non-finite point");
  require(std::abs(z) <= kAffineLimit,
          "veronese: |z| too large for the affine chart, use the homogeneous form");
}

/// Holomorphic rational normal curve of degree d in the affine chart:
/// component k is sqrt(C(d,k)) z^k.
inline Vector veronese_holomorphic(int d, Complex z) {
  require(d >= 1 && d <= kMaxDegree, "veronese: degree out of range");
  check_affine(z);
  Vector out(d + 1);
  Complex power(1, 0);
  for (int k = 0; k <= d; ++k) {
    out[k] = sqrt_binomial(d, k) * power;
    power *= z;
  }
  return out;
}

/// Homogeneous evaluation: component k is sqrt(C(d,k)) u^(d-k) v^k.
inline Vector veronese_homogeneous(int d, Complex u, Complex v) {
  require(d >= 1 && d <= kMaxDegree, "veronese: degree out of range");
  Vector out(d + 1);
  for (int k = 0; k <= d; ++k)
    out[k] = sqrt_binomial(d, k) * cpow(u, d - k) * cpow(v, k);
  return out;
}

/// p-th member of the harmonic sequence of the degree-d curve, evaluated on
/// the affine chart. Component l:
///   p!/(1+|z|^2)^p * sqrt(C(d,l)) * sum_k (-1)^k C(l,p-k) C(d-l,k) z^(l-p+k) zbar^k,
/// with the summation range chosen so only nonnegative powers appear.
inline Vector veronese_member(int d, int p, Complex z) {
  require(d >= 1 && d <= kMaxDegree, "veronese: degree out of range");
  if (p < 0 || p > d) return Vector::Zero(d + 1);
  check_affine(z);
  double p_factorial = 1.0;
  for (int i = 2; i <= p; ++i) p_factorial *= i;
  const double denom = std::pow(1.0 + std::norm(z), p);
  const Complex zbar = std::conj(z);
  Vector out(d + 1);
  for (int l = 0; l <= d; ++l) {
    Complex sum(0, 0);
    const int k_lo = std::max(0, p - l);
    const int k_hi = std::min(p, d - l);
    for (int k = k_lo; k <= k_hi; ++k) {
      double coeff = binomial(l, p - k) * binomial(d - l, k) * (k % 2 ? -1.0 : 1.0);
      sum += coeff * cpow(z, l - p + k) * cpow(zbar, k);
    }
    out[l] = p_factorial / denom * sqrt_binomial(d, l) * sum;
  }
  return out;
}

/// The full list Z_{d,0}, ..., Z_{d,d} at one point.
inline std::vector<Vector> veronese_sequence(int d, Complex z) {
  std::vector<Vector> out;
  out.reserve(d + 1);
  for (int p = 0; p <= d; ++p) out.push_back(veronese_member(d, p, z));
  return out;
}

/// Closed form of |Z_{d,p}|^2 = d! p!/(d-p)! (1+|z|^2)^(d-2p).
inline double veronese_norm_squared(int d, int p, Complex z) {
  require(p >= 0 && p <= d, "veronese: sequence index out of range");
  double factor = 1.0;
  for (int i = d - p + 1; i <= d; ++i) factor *= i;  // d!/(d-p)!
  for (int i = 2; i <= p; ++i) factor *= i;          // * p!
  return factor * std::pow(1.0 + std::norm(z), d - 2 * p);
}

/// Unit-norm curve point, valid on the whole sphere. Near infinity the
/// evaluation switches to the chart w = 1/z, where the curve satisfies
/// Z_{d,p}(1/w) = (-1)^p w^(2p-d) * reverse(Z_{d,p}(w)); the unit phase of
/// the prefactor is kept so the result is the exact normalized lift.
inline Vector veronese_unit(int d, int p, Complex z) {
  if (std::abs(z) <= 1.0) {
    Vector v = veronese_member(d, p, z);
    return v / v.norm();
  }
  Complex w = 1.0 / z;
  Vector v = veronese_member(d, p, w);
  v.reverseInPlace();
  Complex phase = cpow(w / std::abs(w), 2 * p - d) * (p % 2 ? -1.0 : 1.0);
  return phase * v / v.norm();
}

/// Gaussian curvature and cosine of the Kaehler angle of Z_{d,p}:
/// K = 4/(d + 2p(d-p)), cos(theta) = (d - 2p)/(2p(d-p) + d).
inline std::pair<double, double> curvature_and_angle(int d, int p) {
  require(d >= 1, "curvature_and_angle: degree must be positive");
  require(p >= 0 && p <= d, "curvature_and_angle: index out of range");
  double denom = d + 2.0 * p * (d - p);
  return {4.0 / denom, (d - 2.0 * p) / denom};
}

/// Metric factor lambda with ds^2 = lambda^2 dz dzbar for Z_{d,p}.
inline double metric_factor(int d, int p, Complex z) {
  return std::sqrt(d + 2.0 * p * (d - p)) / (1.0 + std::norm(z));
}

/// Element of SU(2) stored as the top row (a, b) of [[a, b], [-conj b, conj a]].
struct GroupElement {
  Complex a{1, 0};
  Complex b{0, 0};

  GroupElement() = default;
  GroupElement(Complex a_, Complex b_) : a(a_), b(b_) {
    require(std::abs(std::norm(a) + std::norm(b) - 1.0) <= 1e-9,
            "GroupElement: |a|^2 + |b|^2 must be 1");
  }

  GroupElement operator*(const GroupElement& o) const {
    // Matrix product of [[a,b],[-conj b, conj a]] factors.
    return GroupElement(a * o.a - b * std::conj(o.b), a * o.b + b * std::conj(o.a));
  }
};

/// Matrix of the degree-d irreducible SU(2) representation acting on the
/// binomial-weighted monomial basis. Columns expand the transformed basis
/// functions, so transpose(rho) maps curve points equivariantly:
///   transpose(rho(g)) Z_d(u, v) = Z_d(conj(a)u - bv, conj(b)u + av).
inline Matrix su2_rep_matrix(int d, const GroupElement& g) {
  require(d >= 1 && d <= kMaxDegree, "su2_rep_matrix: degree out of range");
  const Complex a = g.a, b = g.b;
  const Complex abar = std::conj(a), bbar = std::conj(b);
  Matrix rho(d + 1, d + 1);
  for (int l = 0; l <= d; ++l) {
    for (int m = 0; m <= d; ++m) {
      Complex sum(0, 0);
      const int j_lo = std::max(0, m - (d - l));
      const int j_hi = std::min(l, m);
      for (int j = j_lo; j <= j_hi; ++j) {
        sum += binomial(d - l, m - j) * binomial(l, j) * cpow(a, j) *
               cpow(abar, d - l - m + j) * cpow(-b, m - j) * cpow(bbar, l - j);
      }
      rho(m, l) = sqrt_binomial(d, l) / sqrt_binomial(d, m) * sum;
    }
  }
  return rho;
}

/// Action of (lambda, g) on a symmetric matrix:
/// S -> lambda * transpose(rho(g)) * S * rho(g).
inline Matrix group_action(const Matrix& s, Complex lambda, const GroupElement& g) {
  int d = static_cast<int>(s.rows()) - 1;
  Matrix rho = su2_rep_matrix(d, g);
  return lambda * rho.transpose() * s * rho;
}

}  // namespace qs
