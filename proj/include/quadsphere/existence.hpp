#pragma once

#include <sstream>
#include <vector>

#include "quadsphere/construct.hpp"

namespace qs {

enum class ChainVariant {
  SolveLast,        // given x_0..x_{k-1}, produce x_k with 0 <= x_k <= x_{k-1}
  SolvePenultimate  // given x_0..x_{k-2} and x_k, produce x_{k-1} in (-1, 1)
};

/// Alternating weighted chain with strictly increasing positive weights.
struct ChainProblem {
  RealVector epsilons;      // eps_0 < eps_1 < ... < eps_k, all positive
  RealVector lower_knowns;  // x_0.. (k values for SolveLast, k-1 for SolvePenultimate)
  double last_known = 0.0;  // x_k, SolvePenultimate only
  ChainVariant variant = ChainVariant::SolveLast;
};

/// Solve the alternating identity
///   sum_{j=0}^{k} (-1)^(k-j) x_j eps_j = 0        (SolveLast)
///   2 sum_{j=0}^{k-1} (-1)^(k-1-j) x_j eps_j + x_k eps_k = 0  (SolvePenultimate)
/// for the single unknown. The bounds 0 <= x_k <= x_{k-1}, respectively
/// |x_{k-1}| < 1, follow from the monotone weights.
inline double solve_chain(const ChainProblem& prob) {
  const Index k = prob.epsilons.size() - 1;
  require(k >= 1, "solve_chain: need at least two weights");
  require(prob.epsilons[0] > 0, "solve_chain: weights must be positive");
  for (Index j = 0; j < k; ++j)
    require(prob.epsilons[j] < prob.epsilons[j + 1], "solve_chain: weights must increase");
  auto check_knowns = [&](const RealVector& xs) {
    for (Index j = 0; j < xs.size(); ++j) {
      require(xs[j] >= 0.0 && xs[j] <= 1.0, "solve_chain: known values must lie in [0, 1]");
      if (j > 0) require(xs[j - 1] <= xs[j], "solve_chain: known values must be nondecreasing");
    }
  };

  if (prob.variant == ChainVariant::SolveLast) {
    require(prob.lower_knowns.size() == k, "solve_chain: expected k known values");
    check_knowns(prob.lower_knowns);
    double acc = 0.0;
    for (Index j = 0; j < k; ++j) {
      double sign = ((k - 1 - j) % 2 == 0) ? 1.0 : -1.0;
      acc += sign * prob.lower_knowns[j] * prob.epsilons[j];
    }
    return acc / prob.epsilons[k];
  }

  require(prob.lower_knowns.size() == k - 1, "solve_chain: expected k-1 known values");
  check_knowns(prob.lower_knowns);
  require(prob.last_known >= 0.0 && prob.last_known <= 1.0,
          "solve_chain: trailing value must lie in [0, 1]");
  require(prob.epsilons[k] < 2.0 * prob.epsilons[k - 1],
          "solve_chain: need eps_k < 2 eps_{k-1}");
  double acc = 0.0;
  for (Index j = 0; j + 1 < k; ++j) {
    double sign = ((k - 2 - j) % 2 == 0) ? 1.0 : -1.0;
    acc += 2.0 * sign * prob.lower_knowns[j] * prob.epsilons[j];
  }
  return (acc - prob.last_known * prob.epsilons[k]) / (2.0 * prob.epsilons[k - 1]);
}

namespace detail {

/// Anti-diagonal weights eps_j = sqrt(C(d,j) C(d,m-j)), strictly increasing
/// for j <= m/2.
inline RealVector antidiagonal_weights(int d, int m) {
  const int k = m / 2;
  RealVector eps(k + 1);
  for (int j = 0; j <= k; ++j) eps[j] = sqrt_binomial(d, j) * sqrt_binomial(d, m - j);
  for (int j = 0; j < k; ++j)
    require(eps[j] < eps[j + 1], "antidiagonal weights are not increasing");
  return eps;
}

}  // namespace detail

/// Solution values s_{j,m-j} = s_{m-j,j}, j = 0..m, of the anti-diagonal
/// containment equation with m = 2r + l + 1, such that |s_{j,m-j}| equals
/// the given cosine for j < r while the middle absolute values form the
/// multiset {1 x l, lambda x 2} with |lambda| < 1.
inline RealVector antidiagonal_solution(int d, int l, int r, const RealVector& cosines) {
  require(d >= 3 && d <= kMaxDegree, "antidiagonal_solution: need d >= 3");
  require(l >= 0 && r >= 0, "antidiagonal_solution: negative block sizes");
  const int m = 2 * r + l + 1;
  require(m <= d, "antidiagonal_solution: anti-diagonal index m exceeds d");
  require(cosines.size() == r, "antidiagonal_solution: expected r cosines");
  for (int j = 0; j < r; ++j) {
    require(cosines[j] >= 0.0 && cosines[j] < 1.0, "antidiagonal_solution: cosines in [0,1)");
    if (j > 0) require(cosines[j - 1] <= cosines[j], "antidiagonal_solution: cosines sorted");
  }

  const int k = m / 2;
  RealVector values = RealVector::Zero(m + 1);
  if (k == 0) {
    // Single pair s_{0,1}: the equation forces zero.
    return values;
  }
  RealVector eps = detail::antidiagonal_weights(d, m);

  RealVector x(k + 1);
  if (m % 2 == 1) {
    // All pairs doubled: knowns are the cosines then ones, the last value
    // solves the chain.
    for (int j = 0; j < r; ++j) x[j] = cosines[j];
    for (int j = r; j < k; ++j) x[j] = 1.0;
    ChainProblem prob;
    prob.epsilons = eps;
    prob.lower_knowns = x.head(k);
    prob.variant = ChainVariant::SolveLast;
    x[k] = solve_chain(prob);
    for (int j = 0; j <= k; ++j) {
      double sign = ((k - j) % 2 == 0) ? 1.0 : -1.0;
      values[j] = sign * x[j];
      values[m - j] = values[j];
    }
  } else {
    // Middle entry is single and set to 1; the penultimate pair carries the
    // solved value.
    for (int j = 0; j < r; ++j) x[j] = cosines[j];
    for (int j = r; j <= k - 2; ++j) x[j] = 1.0;
    x[k] = 1.0;
    ChainProblem prob;
    prob.epsilons = eps;
    prob.lower_knowns = x.head(k - 1);
    prob.last_known = x[k];
    prob.variant = ChainVariant::SolvePenultimate;
    x[k - 1] = solve_chain(prob);
    for (int j = 0; j <= k - 1; ++j) {
      double sign = ((k - 1 - j) % 2 == 0) ? 1.0 : -1.0;
      values[j] = sign * x[j];
      values[m - j] = values[j];
    }
    values[k] = x[k];
  }

  double residual = 0.0;
  for (int j = 0; j <= m; ++j)
    residual += values[j] * sqrt_binomial(d, j) * sqrt_binomial(d, m - j);
  if (std::abs(residual) > 1e-12 * eps[k])
    throw NumericError("antidiagonal_solution: containment residual " + std::to_string(residual));
  return values;
}

/// Parameters of the block construction for a member of S_{d,n} whose
/// singular value 1 has multiplicity exactly l = 2d+1-n.
struct ExistenceSpec {
  int d = 3;
  int n = 7;
  RealVector cos2a;  // r values in [0, 1), nondecreasing
  RealVector cos2b;
  double mu = 0.5;
  Matrix A;  // r x r complex symmetric free block
  Matrix B;  // r x r complex symmetric free block
  Matrix C;  // r x r complex free block; its anti-diagonal is overwritten

  int l() const { return 2 * d + 1 - n; }
  int r() const { return (n - d) / 2 - 1; }
  int m() const { return 2 * r() + l() + 1; }
};

/// Spec with the sparsest admissible free data: A = B = C = 0 and staggered
/// default cosines, mu = 1/2.
inline ExistenceSpec default_existence_spec(int d, int n) {
  ExistenceSpec spec;
  spec.d = d;
  spec.n = n;
  int r = spec.r();
  require(r >= 0, "default_existence_spec: n out of range");
  spec.cos2a.resize(r);
  spec.cos2b.resize(r);
  for (int j = 0; j < r; ++j) {
    spec.cos2a[j] = (2.0 * j + 1.0) / (4.0 * r);
    spec.cos2b[j] = (2.0 * j + 1.0) / (4.0 * r + 2.0);
  }
  spec.A = Matrix::Zero(r, r);
  spec.B = Matrix::Zero(r, r);
  spec.C = Matrix::Zero(r, r);
  return spec;
}

/// Margin below 1 required of every singular value outside the prescribed
/// multiplicity-l cluster.
inline constexpr double kExistenceMargin = 1e-4;

/// Block matrix whose singular values are {1 x l, |lambda| x 2, 0 x (d-m)}
/// plus the 2r values of [[A, C^T], [C, B]]; a member of S_{d,n} \ S_{d,n-1}.
inline SymmetricQuadric build_existence_matrix(const ExistenceSpec& spec,
                                               double cluster_tol = kClusterTol) {
  const int d = spec.d, n = spec.n;
  require(d >= 3 && d <= kMaxDegree, "build_existence_matrix: need d >= 3");
  const int l = spec.l(), r = spec.r(), m = spec.m();
  require(l >= 0 && l <= d - 1, "build_existence_matrix: need d + 2 <= n <= 2d + 1");
  require(spec.cos2a.size() == r && spec.cos2b.size() == r,
          "build_existence_matrix: angle sets must have size r");
  require(spec.mu >= 0.0 && spec.mu <= 1.0, "build_existence_matrix: mu in [0, 1]");
  require(spec.A.rows() == r && spec.A.cols() == r, "build_existence_matrix: A must be r x r");
  require(spec.B.rows() == r && spec.B.cols() == r, "build_existence_matrix: B must be r x r");
  require(spec.C.rows() == r && spec.C.cols() == r, "build_existence_matrix: C must be r x r");
  require(is_symmetric(spec.A) && is_symmetric(spec.B),
          "build_existence_matrix: A and B must be symmetric");

  RealVector s_vals = antidiagonal_solution(d, l, r, spec.cos2a);
  RealVector t_vals = antidiagonal_solution(d, l, r, spec.cos2b);
  const Complex blend(spec.mu, 0);
  const Complex blend_i(0, std::sqrt(std::max(0.0, 1.0 - spec.mu * spec.mu)));

  Matrix s = Matrix::Zero(d + 1, d + 1);
  for (int j = 0; j <= m; ++j) s(j, m - j) = blend * s_vals[j] + blend_i * t_vals[j];

  const int row0 = m + 1 - r;  // first row of the C / B blocks
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      s(i, j) += spec.A(i, j);
      s(row0 + i, row0 + j) += spec.B(i, j);
      if (i + j != r - 1) {
        s(row0 + i, j) += spec.C(i, j);
        s(j, row0 + i) += spec.C(i, j);
      }
    }
  }

  // The free blocks must keep the curve inside the quadric and must not
  // reach the singular value 1.
  if (r > 0) {
    Matrix corner(2 * r, 2 * r);
    corner.topLeftCorner(r, r) = s.topLeftCorner(r, r);
    corner.bottomRightCorner(r, r) = s.block(row0, row0, r, r);
    corner.topRightCorner(r, r) = s.block(0, row0, r, r);
    corner.bottomLeftCorner(r, r) = s.block(row0, 0, r, r);
    double top = svd(corner).spectrum.max_value();
    if (top >= 1.0 - kExistenceMargin)
      throw InvalidInputError(
          "build_existence_matrix: invalid spec, the free corner block reaches singular value " +
          std::to_string(top));
  }
  SymmetricQuadric out(d, s);
  ConstraintSystem sys = membership_system(d, 0);
  if (sys.residual(out.S) > kDefaultTol * norm_scale(out.S))
    throw InvalidInputError(
        "build_existence_matrix: invalid spec, free blocks violate containment, residual " +
        std::to_string(sys.residual(out.S)));

  RealVector sv = svd(out.S).spectrum.values;
  Index ones = 0;
  double next_largest = 0.0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (std::abs(sv[i] - 1.0) <= cluster_tol)
      ++ones;
    else
      next_largest = std::max(next_largest, sv[i]);
  }
  if (ones != l || next_largest > 1.0 - kExistenceMargin) {
    std::ostringstream msg;
    msg << "build_existence_matrix: spectrum {";
    for (Index i = 0; i < sv.size(); ++i) msg << (i ? ", " : "") << sv[i];
    msg << "} does not realize multiplicity " << l << " with margin";
    throw NumericError(msg.str());
  }
  return out;
}

inline SymmetricQuadric build_existence_matrix(int d, int n) {
  return build_existence_matrix(default_existence_spec(d, n));
}

/// Member of S_{d,2d+1} whose minimal singular value 0 has multiplicity at
/// least q, carried by an all-nonzero anti-diagonal block of size d - q + 1.
inline SymmetricQuadric prescribed_zero_multiplicity(int d, int q) {
  require(d >= 3 && d <= kMaxDegree, "prescribed_zero_multiplicity: need d >= 3");
  require(q >= 0 && q <= d, "prescribed_zero_multiplicity: q out of range");
  const int m = d - q;
  require(m >= 1, "prescribed_zero_multiplicity: q = d leaves no anti-diagonal");
  if (m == 1)
    throw InvalidInputError(
        "prescribed_zero_multiplicity: degenerate, the single-pair equation only has the zero "
        "solution");

  const int k = m / 2;
  RealVector eps = detail::antidiagonal_weights(d, m);
  RealVector x(k + 1);
  RealVector values = RealVector::Zero(m + 1);
  if (m % 2 == 1) {
    // Positive nondecreasing knowns keep the solved value positive.
    for (int j = 0; j < k; ++j) x[j] = (j + 1.0) / (k + 1.0);
    ChainProblem prob;
    prob.epsilons = eps;
    prob.lower_knowns = x.head(k);
    prob.variant = ChainVariant::SolveLast;
    x[k] = solve_chain(prob);
    for (int j = 0; j <= k; ++j) {
      double sign = ((k - j) % 2 == 0) ? 1.0 : -1.0;
      values[j] = sign * x[j];
      values[m - j] = values[j];
    }
  } else {
    // Knowns bounded by x_k / 2 keep the penultimate value nonzero.
    for (int j = 0; j + 1 < k; ++j) x[j] = (j + 1.0) / (2.0 * (k - 1.0));
    x[k] = 1.0;
    ChainProblem prob;
    prob.epsilons = eps;
    prob.lower_knowns = x.head(std::max(0, k - 1));
    prob.last_known = x[k];
    prob.variant = ChainVariant::SolvePenultimate;
    x[k - 1] = solve_chain(prob);
    for (int j = 0; j <= k - 1; ++j) {
      double sign = ((k - 1 - j) % 2 == 0) ? 1.0 : -1.0;
      values[j] = sign * x[j];
      values[m - j] = values[j];
    }
    values[k] = x[k];
  }
  for (int j = 0; j <= m; ++j)
    if (values[j] == 0.0)
      throw NumericError("prescribed_zero_multiplicity: anti-diagonal entry vanished");

  Matrix s = Matrix::Zero(d + 1, d + 1);
  for (int j = 0; j <= m; ++j) s(j, m - j) = values[j];
  return SymmetricQuadric(d, s);
}

}  // namespace qs
