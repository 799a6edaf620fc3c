#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "quadsphere/quadrics.hpp"
#include "quadsphere/sampling.hpp"

using namespace qs;
using qstest::Rng;

namespace {

Matrix antidiag(std::initializer_list<double> entries) {
  Index n = entries.size();
  Matrix m = Matrix::Zero(n, n);
  Index i = 0;
  for (double e : entries) {
    m(i, n - 1 - i) = e;
    ++i;
  }
  return m;
}

Matrix deg3_example() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 3) = m(3, 0) = 0.5;
  m(1, 2) = m(2, 1) = -1.0 / 6;
  m(1, 3) = m(3, 1) = -std::sqrt(3.0) / 4;
  m(2, 2) = 0.5;
  return m;
}

}  // namespace

TEST_CASE("containment residual closed cases") {
  // (1)(z^2) * 2 - (sqrt2 z)(sqrt2 z) = 0 for the degree-2 antidiagonal.
  Rng rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    Complex z = qstest::random_disk_point(rng, 2.0);
    CHECK(std::abs(containment_residual(antidiag({1, -1, 1}), 2, 0, z)) < 1e-12);
  }
  CHECK(std::abs(containment_residual(Matrix::Identity(2, 2), 1, 0, Complex(0, 0)) -
                 Complex(1, 0)) < 1e-15);
  for (int trial = 0; trial < 100; ++trial) {
    Complex z = qstest::random_disk_point(rng, 2.0);
    CHECK(std::abs(containment_residual(deg3_example(), 3, 0, z)) < 1e-12);
  }
  CHECK_THROWS_AS(containment_residual(Matrix::Identity(3, 3), 4, 0, Complex(0, 0)),
                  InvalidInputError);
}

TEST_CASE("membership system shape and the degree-2 kernel") {
  ConstraintSystem sys = membership_system(2, 0);
  CHECK(sys.rows.rows() == 10);  // five complex constraints
  CHECK(sys.unknowns() == 12);
  CHECK(kernel_dimension(2, 0) == 2);
  CHECK(sys.residual(antidiag({1, -1, 1})) < 1e-12);

  // The kernel is exactly the phase family of antidiag(1, -1, 1).
  std::vector<Matrix> basis = kernel_basis(2, 0);
  REQUIRE(basis.size() == 2);
  ConstraintSystem packer;
  packer.d = 2;
  RealMatrix stack(6, 12);
  stack.row(0) = packer.coordinates(basis[0]);
  stack.row(1) = packer.coordinates(basis[1]);
  stack.row(2) = packer.coordinates(antidiag({1, -1, 1}));
  stack.row(3) = packer.coordinates(Complex(0, 1) * antidiag({1, -1, 1}));
  stack.row(4) = packer.coordinates(basis[0]);
  stack.row(5) = packer.coordinates(basis[1]);
  CHECK(real_rank(stack) == 2);
}

TEST_CASE("kernel dimensions match the representation-theory counts") {
  CHECK(kernel_dimension(1, 0) == 0);
  CHECK(kernel_dimension(3, 0) == 6);
  CHECK(kernel_dimension(4, 1) == 2);
  for (int d = 1; d <= 8; ++d) {
    CHECK(kernel_dimension(d, d / 2) == 0);
    Index expected = 0;
    for (int k = 1; k <= d / 2; ++k) expected += 2 * (2 * (d - 2 * k) + 1);
    CHECK(kernel_dimension(d, 0) == expected);
    CHECK(kernel_dimension(d, 0) == d * d - d);
  }
  // Each step p -> p+1 drops the dimension by 4d - 8p - 6.
  for (int d = 2; d <= 8; ++d)
    for (int p = 0; p + 1 <= d / 2; ++p)
      CHECK(kernel_dimension(d, p) - kernel_dimension(d, p + 1) == 4 * d - 8 * p - 6);
}

TEST_CASE("kernel elements satisfy every equivalent containment form") {
  Rng rng(202);
  for (int d : {4, 5, 7}) {
    for (int p = 0; 2 * p <= d; ++p) {
      std::vector<Matrix> basis = kernel_basis(d, p);
      if (basis.empty()) continue;
      Matrix s = random_kernel_element(basis, rng);
      s /= norm_scale(s);
      for (int trial = 0; trial < 50; ++trial) {
        Complex z = qstest::random_disk_point(rng, 2.0);
        auto seq = veronese_sequence(d, z);
        // Z_{d,k}^T S Z_{d,l} = 0 whenever k + l <= 2p + 1, normalized by
        // the factor norms.
        for (int k = 0; k <= d; ++k) {
          for (int l = 0; l + k <= 2 * p + 1 && l <= d; ++l) {
            Complex r = seq[k].transpose() * s * seq[l];
            CHECK(std::abs(r) <= 1e-9 * std::max(1.0, seq[k].norm() * seq[l].norm()));
          }
        }
        // Items (1) and (4): every member up to p lies in the quadric.
        for (int q = 0; q <= p; ++q) {
          double scale = veronese_norm_squared(d, q, z);
          CHECK(std::abs(containment_residual(s, d, q, z)) <= 1e-9 * scale);
        }
      }
    }
  }
}

TEST_CASE("solution space is invariant under the group action") {
  Rng rng(303);
  for (int d : {3, 5, 6}) {
    for (int p = 0; 2 * p <= d; ++p) {
      ConstraintSystem sys = membership_system(d, p);
      std::vector<Matrix> basis = kernel_basis(d, p);
      if (basis.empty()) continue;
      for (int trial = 0; trial < 5; ++trial) {
        Matrix s = random_kernel_element(basis, rng);
        s /= norm_scale(s);
        GroupElement g = random_group_element(rng);
        Matrix moved = group_action(s, Complex(1, 0), g);
        CHECK(sys.residual(moved) <= 1e-9);
      }
    }
  }
}

TEST_CASE("group action scales singular values by |lambda|") {
  Rng rng(404);
  std::vector<Matrix> basis = kernel_basis(5, 0);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix s = random_kernel_element(basis, rng);
    GroupElement g = random_group_element(rng);
    std::uniform_real_distribution<double> unif(0.1, 2.0);
    double mag = unif(rng);
    Complex lambda = std::polar(mag, unif(rng));
    RealVector before = svd(s).spectrum.values;
    RealVector after = svd(group_action(s, lambda, g)).spectrum.values;
    CHECK((mag * before - after).cwiseAbs().maxCoeff() < 1e-10 * norm_scale(s));
  }
}

TEST_CASE("membership verdicts for the classification representatives") {
  MembershipReport r = is_member_S(antidiag({1, -1, 1}), 2, 4, 0);
  CHECK(r.member);
  CHECK(r.one_multiplicity == 3);

  MembershipReport r45 = is_member_S(antidiag({1, -1, 1, -1, 1}), 4, 5, 0);
  CHECK(r45.member);
  MembershipReport r44 = is_member_S(antidiag({1, -1, 1, -1, 1}), 4, 4, 0);
  CHECK(r44.member);
  CHECK(r44.one_multiplicity == 5);

  for (int d : {2, 3, 5}) {
    MembershipReport rz = is_member_S(Matrix::Zero(d + 1, d + 1), d, 2 * d + 1, d / 2);
    CHECK(rz.member);
  }

  // Negative control: a non-member has a visible residual.
  MembershipReport bad = is_member_S(Matrix::Identity(4, 4), 3, 7, 0);
  CHECK_FALSE(bad.member);
  CHECK_FALSE(bad.constraints_ok);
  CHECK_THROWS_AS(is_member_S(Matrix::Identity(4, 4), 3, 2, 0), InvalidInputError);
}

TEST_CASE("theta polytope membership") {
  RealVector zeros = RealVector::Zero(4);
  CHECK(theta_membership(zeros, 3, 7));
  RealVector ones = RealVector::Ones(4);
  CHECK(theta_membership(ones, 3, 4));
  CHECK(theta_membership(ones, 3, 3));
  RealVector bad(4);
  bad << 0.2, 0.5, 0.8, 0.9;
  CHECK_FALSE(theta_membership(bad, 3, 3));
  RealVector unsorted(3);
  unsorted << 0.5, 0.2, 1.0;
  CHECK_FALSE(theta_membership(unsorted, 2, 4));
}

TEST_CASE("tangent developable generators span the expected space") {
  CHECK(tangent_developable_generators(3).empty());

  auto gens4 = tangent_developable_generators(4);
  CHECK(real_span_dimension(gens4) == 2);
  CHECK(real_span_dimension(gens4) == kernel_dimension(4, 1));

  auto gens6 = tangent_developable_generators(6);
  CHECK(real_span_dimension(gens6) == 12);
  ConstraintSystem sys61 = membership_system(6, 1);
  for (const auto& g : gens6) CHECK(sys61.residual(g.S) <= 1e-10 * norm_scale(g.S));

  for (int d = 4; d <= 9; ++d) {
    auto gens = tangent_developable_generators(d);
    CHECK(real_span_dimension(gens) == d * d - 5 * d + 6);
    ConstraintSystem sys = membership_system(d, 1);
    for (const auto& g : gens) CHECK(sys.residual(g.S) <= 1e-10 * norm_scale(g.S));
  }
  CHECK_THROWS_AS(tangent_developable_generators(2), InvalidInputError);
}
