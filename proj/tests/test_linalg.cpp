#include <doctest.h>

#include "seqtomo/instrument.hpp"
#include "seqtomo/linalg.hpp"
#include "testutil.hpp"

using namespace seqtomo;
namespace tu = seqtomo::testutil;

TEST_CASE("hermitian_eigen on fixed spectra") {
  SUBCASE("identity") {
    const auto ed = hermitian_eigen(ComplexMatrix::Identity(2, 2));
    CHECK(ed.eigenvalues(0) == doctest::Approx(1.0));
    CHECK(ed.eigenvalues(1) == doctest::Approx(1.0));
  }
  SUBCASE("pauli z") {
    const auto ed = hermitian_eigen(pauli_z());
    CHECK(ed.eigenvalues(0) == doctest::Approx(1.0));
    CHECK(ed.eigenvalues(1) == doctest::Approx(-1.0));
  }
  SUBCASE("shifted projector, d=3") {
    // (1-p)/3 I + p |1><1| at p = 1/2 has spectrum (2/3, 1/6, 1/6).
    const double p = 0.5;
    ComplexMatrix m = ((1.0 - p) / 3.0) * ComplexMatrix::Identity(3, 3);
    m(0, 0) += p;
    const auto ed = hermitian_eigen(m);
    CHECK(ed.eigenvalues(0) == doctest::Approx(2.0 / 3.0));
    CHECK(ed.eigenvalues(1) == doctest::Approx(1.0 / 6.0));
    CHECK(ed.eigenvalues(2) == doctest::Approx(1.0 / 6.0));
  }
}

TEST_CASE("hermitian_eigen reconstruction for random Hermitian matrices") {
  auto gen = tu::rng(11);
  for (int d : {2, 3, 5, 8, 16}) {
    const ComplexMatrix m = tu::random_hermitian(d, gen);
    const auto ed = hermitian_eigen(m);
    const ComplexMatrix rebuilt =
        ed.eigenvectors * ed.eigenvalues.asDiagonal() * ed.eigenvectors.adjoint();
    CHECK((m - rebuilt).norm() <= 1e-8 * m.norm());
    for (Eigen::Index i = 0; i + 1 < ed.eigenvalues.size(); ++i) {
      CHECK(ed.eigenvalues(i) >= ed.eigenvalues(i + 1));
    }
  }
}

TEST_CASE("hermitian_eigen rejects bad input") {
  CHECK_THROWS_AS(hermitian_eigen(ComplexMatrix::Zero(2, 3)), std::invalid_argument);
  ComplexMatrix m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(hermitian_eigen(m), std::invalid_argument);
}

TEST_CASE("psd_sqrt on fixed matrices") {
  SUBCASE("identity") {
    CHECK(tu::max_abs_diff(psd_sqrt(ComplexMatrix::Identity(3, 3)),
                           ComplexMatrix::Identity(3, 3)) <= 1e-12);
  }
  SUBCASE("diagonal") {
    ComplexMatrix m(2, 2), expected(2, 2);
    m << 4, 0, 0, 9;
    expected << 2, 0, 0, 3;
    CHECK(tu::max_abs_diff(psd_sqrt(m), expected) <= 1e-12);
  }
  SUBCASE("shifted projector, p = 3/4") {
    // (1-p)/2 I + p |1><1| = diag(7/8, 1/8).
    const double p = 0.75;
    ComplexMatrix m = ((1.0 - p) / 2.0) * ComplexMatrix::Identity(2, 2);
    m(0, 0) += p;
    ComplexMatrix expected(2, 2);
    expected << std::sqrt(7.0 / 8.0), 0, 0, std::sqrt(1.0 / 8.0);
    CHECK(tu::max_abs_diff(psd_sqrt(m), expected) <= 1e-12);
  }
}

TEST_CASE("psd_sqrt squares back to the input") {
  auto gen = tu::rng(23);
  for (int d : {2, 3, 4, 6}) {
    const ComplexMatrix r = tu::random_psd(d, gen);
    const ComplexMatrix root = psd_sqrt(r * r);
    CHECK((root - r).norm() <= 1e-7 * std::max(1.0, r.norm()));
    const ComplexMatrix s = psd_sqrt(r);
    CHECK((s * s - r).norm() <= 1e-8 * std::max(1.0, r.norm()));
  }
}

TEST_CASE("psd_sqrt clipping and rejection") {
  ComplexMatrix nearly = -1e-10 * ComplexMatrix::Identity(2, 2);
  CHECK(tu::max_abs_diff(psd_sqrt(nearly), ComplexMatrix::Zero(2, 2)) <= 1e-12);
  CHECK_THROWS_AS(psd_sqrt(pauli_z()), std::invalid_argument);
}

TEST_CASE("vec column-stacks") {
  ComplexMatrix m(2, 2);
  m << complex_t{1, 0}, complex_t{2, 0}, complex_t{3, 0}, complex_t{4, 0};
  const ComplexVector v = vec(m);
  CHECK(v(0) == complex_t{1, 0});
  CHECK(v(1) == complex_t{3, 0});
  CHECK(v(2) == complex_t{2, 0});
  CHECK(v(3) == complex_t{4, 0});

  CHECK(vec(ComplexMatrix::Zero(3, 3)).norm() == 0.0);
  CHECK(std::abs(vec(pauli_x()).dot(vec(pauli_y()))) <= 1e-15);
}

TEST_CASE("vec is linear") {
  auto gen = tu::rng(31);
  const ComplexMatrix a = tu::random_matrix(4, gen);
  const ComplexMatrix b = tu::random_matrix(4, gen);
  const complex_t alpha{0.3, -1.2};
  const complex_t beta{-2.0, 0.7};
  CHECK((vec(alpha * a + beta * b) - (alpha * vec(a) + beta * vec(b))).norm() <= 1e-14);
}

TEST_CASE("span_rank counts independent operators") {
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  CHECK(span_rank({id, pauli_x(), pauli_y(), pauli_z()}) == 4);
  CHECK(span_rank({id, 2.0 * id}) == 1);

  SUBCASE("permutation invariance") {
    std::vector<ComplexMatrix> ops = {pauli_z(), id, pauli_y(), pauli_x()};
    CHECK(span_rank(ops) == 4);
  }
  SUBCASE("matrix units span d^2") {
    std::vector<ComplexMatrix> units;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        ComplexMatrix e = ComplexMatrix::Zero(3, 3);
        e(i, j) = 1.0;
        units.push_back(e);
      }
    }
    CHECK(span_rank(units) == 9);
  }
  SUBCASE("depth-2 effects of the Kraus-rank-2 example at p = 1/2") {
    const double p = 0.5;
    const double q = p * std::sqrt(1.0 - p);
    const ComplexMatrix sx = pauli_x(), sy = pauli_y(), sz = pauli_z();
    std::vector<ComplexMatrix> effects = {
        0.25 * (id - p * sz - q * sx), 0.25 * (id - p * sz + q * sx),
        0.25 * (id + p * sz - q * sy), 0.25 * (id + p * sz + q * sy)};
    CHECK(span_rank(effects) == 4);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(span_rank({}), std::invalid_argument);
    CHECK_THROWS_AS(span_rank({id, ComplexMatrix::Identity(3, 3)}), std::invalid_argument);
  }
}

TEST_CASE("kron basics and the mixed-product rule") {
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  CHECK(tu::max_abs_diff(kron(id2, id2), ComplexMatrix::Identity(4, 4)) == 0.0);

  ComplexMatrix zz(4, 4);
  zz.setZero();
  zz(0, 0) = 1;
  zz(1, 1) = -1;
  zz(2, 2) = -1;
  zz(3, 3) = 1;
  CHECK(tu::max_abs_diff(kron(pauli_z(), pauli_z()), zz) == 0.0);

  SUBCASE("commuting one-sided factors") {
    ComplexMatrix h(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    h << s, s, s, -s;
    CHECK(tu::max_abs_diff(kron(h, id2) * kron(id2, h), kron(h, h)) <= 1e-15);
  }
  SUBCASE("random mixed product") {
    auto gen = tu::rng(47);
    const ComplexMatrix a = tu::random_matrix(2, gen);
    const ComplexMatrix b = tu::random_matrix(3, gen);
    const ComplexMatrix c = tu::random_matrix(2, gen);
    const ComplexMatrix d = tu::random_matrix(3, gen);
    CHECK(tu::max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)) <= 1e-12);
  }
}
