#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace seqtomo {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using complex_t = std::complex<double>;

// Numerical tolerances shared across the library. All fields must be >= 0.
struct Tolerances {
  double hermiticity_tol = 1e-9;
  double psd_tol = 1e-9;
  double trace_tol = 1e-9;
  double rank_rel_tol = 1e-10;
};

struct EigenDecomposition {
  RealVector eigenvalues;     // sorted descending
  ComplexMatrix eigenvectors; // column i pairs with eigenvalues[i]
};

// Largest |entry| of M - M^dag; zero for exactly Hermitian input.
double hermiticity_residual(const ComplexMatrix& m);

bool is_finite(const ComplexMatrix& m);

// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
// Throws std::invalid_argument for non-square or non-Hermitian input.
EigenDecomposition hermitian_eigen(const ComplexMatrix& m,
                                   double hermiticity_tol = Tolerances{}.hermiticity_tol);

// Hermitian square root of a PSD matrix. Eigenvalues in [-psd_tol, 0) are
// clipped to zero; anything below -psd_tol throws std::invalid_argument.
ComplexMatrix psd_sqrt(const ComplexMatrix& m,
                       double psd_tol = Tolerances{}.psd_tol,
                       double hermiticity_tol = Tolerances{}.hermiticity_tol);

// Column-stacking vectorization, vec([[a,b],[c,d]]) = (a,c,b,d).
ComplexVector vec(const ComplexMatrix& m);

// Dimension of the span of a set of equally sized square operators:
// number of singular values of the stacked vec-matrix above
// rank_rel_tol * sigma_max. Throws on an empty list or mixed dimensions.
int span_rank(const std::vector<ComplexMatrix>& operators,
              double rank_rel_tol = Tolerances{}.rank_rel_tol);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

} // namespace seqtomo
