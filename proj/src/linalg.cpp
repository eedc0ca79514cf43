#include "seqtomo/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace seqtomo {

double hermiticity_residual(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("hermiticity_residual: matrix must be square");
  }
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_finite(const ComplexMatrix& m) {
  return m.allFinite();
}

EigenDecomposition hermitian_eigen(const ComplexMatrix& m, double hermiticity_tol) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("hermitian_eigen: matrix must be square");
  }
  const double residual = hermiticity_residual(m);
  if (residual > hermiticity_tol) {
    throw std::invalid_argument("hermitian_eigen: matrix not Hermitian, residual " +
                                std::to_string(residual));
  }
  // Symmetrize so rounding in the input cannot leak into the solver.
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eigen: eigensolver failed to converge");
  }

  const Eigen::Index n = m.rows();
  EigenDecomposition out;
  out.eigenvalues = RealVector(n);
  out.eigenvectors = ComplexMatrix(n, n);
  // Eigen returns eigenvalues ascending; flip to descending.
  for (Eigen::Index i = 0; i < n; ++i) {
    out.eigenvalues(i) = solver.eigenvalues()(n - 1 - i);
    out.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m, double psd_tol, double hermiticity_tol) {
  const EigenDecomposition ed = hermitian_eigen(m, hermiticity_tol);
  const Eigen::Index n = m.rows();
  RealVector roots(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lambda = ed.eigenvalues(i);
    if (lambda < -psd_tol) {
      throw std::invalid_argument("psd_sqrt: eigenvalue " + std::to_string(lambda) +
                                  " below -psd_tol, matrix is not PSD");
    }
    roots(i) = std::sqrt(std::max(lambda, 0.0));
  }
  return ed.eigenvectors * roots.asDiagonal() * ed.eigenvectors.adjoint();
}

ComplexVector vec(const ComplexMatrix& m) {
  // Eigen matrices are column-major, so the storage order is already the
  // column-stacked layout.
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

int span_rank(const std::vector<ComplexMatrix>& operators, double rank_rel_tol) {
  if (operators.empty()) {
    throw std::invalid_argument("span_rank: empty operator list");
  }
  const Eigen::Index d = operators.front().rows();
  for (const auto& op : operators) {
    if (op.rows() != d || op.cols() != d) {
      throw std::invalid_argument("span_rank: operators must share one square dimension");
    }
  }

  ComplexMatrix stacked(static_cast<Eigen::Index>(operators.size()), d * d);
  for (Eigen::Index i = 0; i < stacked.rows(); ++i) {
    stacked.row(i) = vec(operators[static_cast<size_t>(i)]).transpose();
  }

  Eigen::JacobiSVD<ComplexMatrix> svd(stacked);
  const RealVector& sigma = svd.singularValues();
  if (sigma.size() == 0 || sigma(0) == 0.0) {
    return 0;
  }
  const double cutoff = rank_rel_tol * sigma(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cutoff) {
      ++rank;
    }
  }
  return rank;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

} // namespace seqtomo
