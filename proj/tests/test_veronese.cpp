#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "quadsphere/veronese.hpp"

using namespace qs;
using qstest::Rng;

TEST_CASE("holomorphic veronese components") {
  Complex z(0.4, -0.2);
  Vector v = veronese_holomorphic(3, z);
  CHECK(std::abs(v[0] - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(v[1] - std::sqrt(3.0) * z) < 1e-15);
  CHECK(std::abs(v[2] - std::sqrt(3.0) * z * z) < 1e-15);
  CHECK(std::abs(v[3] - z * z * z) < 1e-15);

  Vector w = veronese_holomorphic(1, Complex(0, 0));
  CHECK(std::abs(w[0] - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(w[1]) == 0.0);
}

TEST_CASE("binomial sum oracle at z = 1") {
  // Components sqrt(C(5,k)); squared norm is sum C(5,k) = 2^5.
  Vector v = veronese_holomorphic(5, Complex(1, 0));
  double total = 0;
  for (int k = 0; k <= 5; ++k) {
    CHECK(std::abs(v[k].real() - sqrt_binomial(5, k)) < 1e-14);
    total += binomial(5, k);
  }
  CHECK(total == 32.0);
  CHECK(v.squaredNorm() == Catch::Approx(32.0));
}

TEST_CASE("sequence members at the origin via the recursion oracle") {
  // Differentiate (1, sqrt(2) z, z^2) through the recursion
  // Z_{p+1} = dZ_p/dz - dlog|Z_p|^2/dz * Z_p symbolically at z = 0:
  // Z_{2,1}(0) = (0, sqrt 2, 0), Z_{2,2}(0) = (0, 0, 2).
  Vector z1 = veronese_member(2, 1, Complex(0, 0));
  CHECK(std::abs(z1[0]) < 1e-15);
  CHECK(std::abs(z1[1] - Complex(std::sqrt(2.0), 0)) < 1e-14);
  CHECK(std::abs(z1[2]) < 1e-15);
  Vector z2 = veronese_member(2, 2, Complex(0, 0));
  CHECK(std::abs(z2[0]) < 1e-15);
  CHECK(std::abs(z2[1]) < 1e-15);
  CHECK(std::abs(z2[2] - Complex(2, 0)) < 1e-14);
}

TEST_CASE("recursion oracle reproduces the closed-form members") {
  // Finite-difference build of the sequence: each member from the previous
  // one through the defining recursion, compared to the direct evaluation.
  Rng rng(42);
  for (int d : {2, 4, 5}) {
    for (int trial = 0; trial < 4; ++trial) {
      Complex z = qstest::random_disk_point(rng, 1.5);
      for (int p = 0; p + 1 <= d; ++p) {
        auto member = [&](Complex at) { return veronese_member(d, p, at); };
        Vector dz = qstest::wirtinger_dz(member, z);
        auto log_norm = [&](Complex at) { return std::log(veronese_member(d, p, at).squaredNorm()); };
        Complex dlog(qstest::wirtinger_dz_scalar(log_norm, z, 1e-5, false) * 0.5,
                     -qstest::wirtinger_dz_scalar(log_norm, z, 1e-5, true) * 0.5);
        Vector recursed = dz - dlog * veronese_member(d, p, z);
        Vector direct = veronese_member(d, p + 1, z);
        CHECK((recursed - direct).norm() < 1e-5 * std::max(1.0, direct.norm()));
      }
    }
  }
}

TEST_CASE("norm formula and orthogonality of the sequence") {
  Rng rng(4242);
  for (int d : {1, 3, 6, 9}) {
    for (int trial = 0; trial < 5; ++trial) {
      Complex z = qstest::random_disk_point(rng, 2.0);
      auto seq = veronese_sequence(d, z);
      for (int p = 0; p <= d; ++p) {
        double expected = veronese_norm_squared(d, p, z);
        CHECK(std::abs(seq[p].squaredNorm() - expected) < 1e-10 * expected);
        for (int q = 0; q < p; ++q) {
          double bound = 1e-9 * seq[p].norm() * seq[q].norm();
          CHECK(std::abs(seq[p].dot(seq[q])) < std::max(bound, 1e-12));
        }
      }
      // |Z_{d,0}|^2 = (1 + |z|^2)^d.
      CHECK(seq[0].squaredNorm() ==
            Catch::Approx(std::pow(1 + std::norm(z), d)).epsilon(1e-10));
    }
  }
}

TEST_CASE("dbar identity against the finite-difference oracle") {
  int d = 4;
  Complex z(0.3, 0.7);
  for (int p = 1; p <= d; ++p) {
    auto member = [&](Complex at) { return veronese_member(d, p, at); };
    Vector fd = qstest::wirtinger_dzbar(member, z);
    Vector closed = -(p * (d - p + 1.0)) / std::pow(1.0 + std::norm(z), 2.0) *
                    veronese_member(d, p - 1, z);
    CHECK((fd - closed).norm() < 1e-8 * std::max(1.0, closed.norm()));
  }
}

TEST_CASE("unit evaluation agrees across the chart swap") {
  Rng rng(51);
  for (int d : {3, 7}) {
    for (int p = 0; p <= d / 2; ++p) {
      std::uniform_real_distribution<double> angle(0, 6.28);
      double t = angle(rng);
      for (double radius : {1.5, 3.0, 40.0}) {
        Complex z = std::polar(radius, t);
        Vector direct = veronese_member(d, p, z);
        direct /= direct.norm();
        Vector swapped = veronese_unit(d, p, z);
        // Equal up to the documented exact phase; compare projectively.
        Complex phase = direct.dot(swapped) / direct.squaredNorm();
        CHECK(std::abs(std::abs(phase) - 1.0) < 1e-10);
        CHECK((direct * phase - swapped).norm() < 1e-10);
      }
    }
  }
}

TEST_CASE("affine chart rejects far-out points") {
  CHECK_THROWS_AS(veronese_holomorphic(3, Complex(2e8, 0)), InvalidInputError);
  CHECK_THROWS_AS(veronese_member(3, 1, Complex(0, 1e9)), InvalidInputError);
}

TEST_CASE("curvature and angle closed forms") {
  for (int d = 1; d <= 10; ++d) {
    auto [k0, c0] = curvature_and_angle(d, 0);
    CHECK(k0 == Catch::Approx(4.0 / d));
    CHECK(c0 == Catch::Approx(1.0));
    auto [kd, cd] = curvature_and_angle(d, d);
    CHECK(cd == Catch::Approx(-1.0));
    CHECK(kd == Catch::Approx(4.0 / (d + 2.0 * d * (d - d) + 2.0 * d * d - 2.0 * d * d)));
    if (d % 2 == 0) {
      auto [km, cm] = curvature_and_angle(d, d / 2);
      CHECK(km == Catch::Approx(8.0 / (d * d + 2.0 * d)));
      CHECK(cm == Catch::Approx(0.0).margin(1e-15));
    }
  }
}

TEST_CASE("representation matrix of the identity") {
  for (int d : {1, 4}) {
    Matrix rho = su2_rep_matrix(d, GroupElement());
    CHECK((rho - Matrix::Identity(d + 1, d + 1)).norm() < 1e-14);
  }
}

TEST_CASE("degree-1 representation from the substitution oracle") {
  // Substituting (conj(a) u - b v, conj(b) u + a v) into (u, v) determines
  // the matrix transpose(rho) = [[conj a, -b], [conj b, a]] directly.
  Rng rng(8);
  auto [a, b] = qstest::random_su2(rng);
  Matrix rho = su2_rep_matrix(1, GroupElement(a, b));
  Matrix expected(2, 2);
  expected << std::conj(a), std::conj(b), -b, a;
  CHECK((rho - expected).norm() < 1e-12);
}

TEST_CASE("diagonal torus acts by the weight phases in degree 3") {
  double theta = 0.7;
  GroupElement g(std::polar(1.0, theta), 0);
  Matrix rho = su2_rep_matrix(3, g);
  Vector expected(4);
  expected << std::polar(1.0, -3 * theta), std::polar(1.0, -theta), std::polar(1.0, theta),
      std::polar(1.0, 3 * theta);
  CHECK((rho - Matrix(expected.asDiagonal())).norm() < 1e-12);
}

TEST_CASE("equivariance of the representation matrices") {
  Rng rng(553);
  std::normal_distribution<double> normal;
  for (int d = 1; d <= 10; ++d) {
    for (int trial = 0; trial < 100; ++trial) {
      auto [a, b] = qstest::random_su2(rng);
      GroupElement g(a, b);
      Matrix rho = su2_rep_matrix(d, g);
      CHECK((rho.adjoint() * rho - Matrix::Identity(d + 1, d + 1)).norm() < 1e-11);
      Complex u(normal(rng), normal(rng));
      Complex v(normal(rng), normal(rng));
      Vector lhs = rho.transpose() * veronese_homogeneous(d, u, v);
      Vector rhs = veronese_homogeneous(d, std::conj(a) * u - b * v, std::conj(b) * u + a * v);
      CHECK((lhs - rhs).norm() < 1e-9 * std::max(1.0, rhs.norm()));
    }
  }
}

TEST_CASE("representation is a homomorphism in the plain order") {
  // The order is fixed once by the equivariance oracle: substitution of
  // composed group elements matches rho(g1 g2) = rho(g1) rho(g2).
  Rng rng(10101);
  for (int trial = 0; trial < 100; ++trial) {
    auto [a1, b1] = qstest::random_su2(rng);
    auto [a2, b2] = qstest::random_su2(rng);
    GroupElement g1(a1, b1), g2(a2, b2);
    int d = 2 + static_cast<int>(rng() % 6);
    Matrix lhs = su2_rep_matrix(d, g1 * g2);
    Matrix rhs = su2_rep_matrix(d, g1) * su2_rep_matrix(d, g2);
    CHECK((lhs - rhs).norm() < 1e-10);
  }
}

TEST_CASE("group element validation") {
  CHECK_THROWS_AS(GroupElement(Complex(1, 0), Complex(0.5, 0)), InvalidInputError);
  CHECK_THROWS_AS(su2_rep_matrix(0, GroupElement()), InvalidInputError);
}
