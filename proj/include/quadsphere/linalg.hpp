#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "quadsphere/core.hpp"

namespace qs {

/// Contiguous run of numerically equal singular values.
struct Cluster {
  Index begin = 0;
  Index size = 0;
  double value = 0.0;  // representative (mean of the run)
};

/// Partition sorted values into maximal runs whose consecutive gaps are at
/// most `tol`. Input must be nondecreasing.
inline std::vector<Cluster> cluster(const RealVector& values, double tol) {
  require(tol > 0, "cluster: tolerance must be positive");
  for (Index i = 0; i + 1 < values.size(); ++i)
    require(values[i] <= values[i + 1], "cluster: values not sorted");
  std::vector<Cluster> out;
  Index i = 0;
  while (i < values.size()) {
    Index j = i + 1;
    while (j < values.size() && values[j] - values[j - 1] <= tol) ++j;
    double mean = values.segment(i, j - i).mean();
    out.push_back({i, j - i, mean});
    i = j;
  }
  return out;
}

/// Nondecreasing singular values sigma_1 <= ... <= sigma_q together with
/// their equal-value clusters and the angles a_j in [0, pi/4] defined by
/// sigma_j = cos(2 a_j) whenever sigma_j <= 1.
struct SingularSpectrum {
  RealVector values;
  std::vector<Cluster> clusters;
  RealVector angles;

  Index size() const { return values.size(); }
  double max_value() const { return values.size() ? values[values.size() - 1] : 0.0; }

  /// Multiplicity of the cluster whose representative is closest to `v`
  /// within `tol`; zero if no cluster matches.
  Index multiplicity_of(double v, double tol) const {
    for (const Cluster& c : clusters)
      if (std::abs(c.value - v) <= tol) return c.size;
    return 0;
  }
};

inline SingularSpectrum make_spectrum(const RealVector& values, double cluster_tol) {
  SingularSpectrum sp;
  sp.values = values;
  sp.clusters = cluster(values, cluster_tol);
  sp.angles.resize(values.size());
  for (Index i = 0; i < values.size(); ++i) {
    double s = std::clamp(values[i], 0.0, 1.0);
    sp.angles[i] = 0.5 * std::acos(s);
  }
  return sp;
}

/// Factorization M = V * Sigma * W^* with unitary V, W and the singular
/// values in nondecreasing order on the diagonal of Sigma.
struct SvdResult {
  Matrix V;
  SingularSpectrum spectrum;
  Matrix W;

  /// Sigma of shape rows(V) x rows(W) with the spectrum on the diagonal.
  Matrix sigma_matrix() const {
    Matrix s = Matrix::Zero(V.rows(), W.rows());
    for (Index i = 0; i < spectrum.size(); ++i) s(i, i) = spectrum.values[i];
    return s;
  }

  Matrix reconstruct() const { return V * sigma_matrix() * W.adjoint(); }
};

/// Full SVD of a dense complex matrix, singular values nondecreasing.
inline SvdResult svd(const Matrix& m, double cluster_tol = kClusterTol) {
  require(m.rows() >= 1 && m.cols() >= 1, "svd: empty matrix");
  require_finite(m, "svd");
  Eigen::JacobiSVD<Matrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Index q = std::min(m.rows(), m.cols());
  // Eigen orders singular values decreasingly; flip the leading q columns.
  RealVector vals(q);
  Matrix v = solver.matrixU();
  Matrix w = solver.matrixV();
  for (Index i = 0; i < q; ++i) {
    vals[i] = solver.singularValues()[q - 1 - i];
    v.col(i) = solver.matrixU().col(q - 1 - i);
    w.col(i) = solver.matrixV().col(q - 1 - i);
  }
  SvdResult out;
  out.V = std::move(v);
  out.W = std::move(w);
  out.spectrum = make_spectrum(vals, cluster_tol);
  return out;
}

/// Takagi (unitary congruence) factorization S = U^T * Sigma * U of a
/// complex symmetric matrix, U unitary.
struct TakagiFactorization {
  Matrix U;
  SingularSpectrum spectrum;
  double residual = 0.0;

  Matrix reconstruct() const {
    return U.transpose() * spectrum.values.cast<Complex>().asDiagonal() * U;
  }
};

struct TakagiOptions {
  double tol = kDefaultTol;          // relative Frobenius reconstruction tolerance
  double cluster_tol = kClusterTol;  // absolute clustering of singular values
};

namespace detail {

/// Simultaneously diagonalize the commuting real symmetric matrices X, Y by
/// one real orthogonal matrix: diagonalize X, then Y restricted to each
/// eigenvalue cluster of X.
inline RealMatrix joint_diagonalizer(const RealMatrix& x, const RealMatrix& y) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(x);
  RealMatrix o = es.eigenvectors();
  const RealVector mu = es.eigenvalues();
  double scale = std::max(1.0, std::abs(mu[mu.size() - 1]) + std::abs(mu[0]));
  std::vector<Cluster> runs = cluster(mu, 1e-9 * scale);
  for (const Cluster& c : runs) {
    if (c.size < 2) continue;
    RealMatrix block = o.middleCols(c.begin, c.size).transpose() * y * o.middleCols(c.begin, c.size);
    Eigen::SelfAdjointEigenSolver<RealMatrix> esb(0.5 * (block + block.transpose()));
    o.middleCols(c.begin, c.size) = o.middleCols(c.begin, c.size) * esb.eigenvectors();
  }
  return o;
}

/// For a unitary symmetric Q, return unitary R with R^T * R = Q. Writes
/// Q = O * D * O^T with O real orthogonal and D diagonal unit-modulus, then
/// takes R = sqrt(D) * O^T.
inline Matrix congruence_sqrt(const Matrix& q) {
  RealMatrix o = joint_diagonalizer(q.real(), q.imag());
  Matrix d = o.transpose() * q * o;
  Vector half(q.rows());
  for (Index i = 0; i < q.rows(); ++i) {
    Complex z = d(i, i);
    double mod = std::abs(z);
    half[i] = mod > 0 ? std::sqrt(z / mod) * std::sqrt(mod) : Complex(1, 0);
  }
  return half.asDiagonal() * o.transpose().cast<Complex>();
}

}  // namespace detail

/// Takagi factorization via the SVD S = V Sigma W^*. The coupling
/// Q = V^T W is block-diagonal over clusters of equal singular values,
/// unitary symmetric on each positive cluster; a congruence square root per
/// cluster turns W^* into the required U. Clusters are widened (up to a
/// fixed budget) if nearly equal singular values spoil the residual.
inline TakagiFactorization takagi(const Matrix& s, TakagiOptions opts = {}) {
  require(s.rows() == s.cols(), "takagi: matrix must be square");
  require_finite(s, "takagi");
  require((s - s.transpose()).norm() <= opts.tol * norm_scale(s),
          "takagi: matrix is not symmetric");
  const Index n = s.rows();
  const Matrix sym = symmetrize(s);
  const double scale = norm_scale(sym);

  if (sym.norm() == 0.0) {
    TakagiFactorization out;
    out.U = Matrix::Identity(n, n);
    out.spectrum = make_spectrum(RealVector::Zero(n), opts.cluster_tol);
    out.residual = 0.0;
    return out;
  }

  SvdResult dec = svd(sym, opts.cluster_tol);
  const RealVector& sig = dec.spectrum.values;
  const Matrix q = dec.V.transpose() * dec.W;

  TakagiFactorization best;
  best.residual = std::numeric_limits<double>::infinity();
  double ctol = opts.cluster_tol;
  for (int attempt = 0; attempt < 5; ++attempt, ctol *= 100.0) {
    std::vector<Cluster> runs = cluster(sig, ctol);
    Matrix r = Matrix::Identity(n, n);
    for (const Cluster& c : runs) {
      if (c.value <= ctol) continue;  // zero cluster: any unitary block works
      r.block(c.begin, c.begin, c.size, c.size) =
          detail::congruence_sqrt(q.block(c.begin, c.begin, c.size, c.size));
    }
    TakagiFactorization cand;
    cand.U = r * dec.W.adjoint();
    cand.spectrum = make_spectrum(sig, opts.cluster_tol);
    cand.residual = (cand.reconstruct() - sym).norm();
    if (cand.residual < best.residual) best = std::move(cand);
    if (best.residual <= opts.tol * scale) return best;
  }
  throw NumericError("takagi: residual " + std::to_string(best.residual) +
                     " exceeds tolerance " + std::to_string(opts.tol * scale));
}

/// Two complex symmetric matrices are unitarily congruent exactly when their
/// singular values coincide.
inline bool unitarily_congruent(const Matrix& a, const Matrix& b, double tol = kClusterTol) {
  require(a.rows() == a.cols() && b.rows() == b.cols(), "unitarily_congruent: square matrices required");
  require(a.rows() == b.rows(), "unitarily_congruent: size mismatch");
  RealVector sa = svd(a).spectrum.values;
  RealVector sb = svd(b).spectrum.values;
  return ((sa - sb).cwiseAbs().maxCoeff() <= tol);
}

}  // namespace qs
