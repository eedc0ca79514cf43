#pragma once

#include <random>

#include "seqtomo/instrument.hpp"
#include "seqtomo/linalg.hpp"

namespace seqtomo::testutil {

inline std::mt19937_64 rng(uint64_t seed) { return std::mt19937_64(seed); }

inline ComplexMatrix random_matrix(int d, std::mt19937_64& gen) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix m(d, d);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      m(i, j) = complex_t{gauss(gen), gauss(gen)};
    }
  }
  return m;
}

inline ComplexMatrix random_hermitian(int d, std::mt19937_64& gen) {
  const ComplexMatrix g = random_matrix(d, gen);
  return 0.5 * (g + g.adjoint());
}

inline ComplexMatrix random_psd(int d, std::mt19937_64& gen) {
  const ComplexMatrix g = random_matrix(d, gen);
  return g * g.adjoint();
}

inline ComplexMatrix random_unitary(int d, std::mt19937_64& gen) {
  const ComplexMatrix g = random_matrix(d, gen);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  return qr.householderQ() * ComplexMatrix::Identity(d, d);
}

// Random two-outcome qubit POVM {E, I - E} with E strictly inside (O, I),
// the generic input for the Luders negative results.
inline std::vector<Effect> random_dichotomic_povm(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  const ComplexMatrix u = random_unitary(2, gen);
  ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
  diag(0, 0) = unif(gen);
  diag(1, 1) = unif(gen);
  const ComplexMatrix e = u * diag * u.adjoint();
  return {Effect(e), Effect(ComplexMatrix::Identity(2, 2) - e)};
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

} // namespace seqtomo::testutil
