#include "seqtomo/instrument.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace seqtomo {

namespace {

const complex_t kI{0.0, 1.0};

void require(bool cond, const std::string& msg) {
  if (!cond) {
    throw std::invalid_argument(msg);
  }
}

ComplexMatrix hadamard() {
  ComplexMatrix h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return h;
}

// The second qubit transition unitary of the dichotomic examples; its
// adjoint's columns are the circular (sigma_y) eigenbasis.
ComplexMatrix v_unitary() {
  ComplexMatrix v(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  v << complex_t{s, 0.0}, -kI * s, complex_t{s, 0.0}, kI * s;
  return v;
}

} // namespace

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << complex_t{0, 0}, -kI, kI, complex_t{0, 0};
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

bool is_prime(int n) {
  if (n < 2) {
    return false;
  }
  for (int f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      return false;
    }
  }
  return true;
}

// --- DensityOperator --- //

DensityOperator::DensityOperator(ComplexMatrix matrix, const Tolerances& tol)
    : matrix_(std::move(matrix)) {
  require(matrix_.rows() == matrix_.cols() && matrix_.rows() > 0,
          "DensityOperator: matrix must be square and nonempty");
  require(is_finite(matrix_), "DensityOperator: entries must be finite");
  require(hermiticity_residual(matrix_) <= tol.hermiticity_tol,
          "DensityOperator: matrix not Hermitian within tolerance");
  const double trace_err = std::abs(matrix_.trace() - complex_t{1.0, 0.0});
  require(trace_err <= tol.trace_tol, "DensityOperator: trace differs from 1 by " +
                                          std::to_string(trace_err));
  const auto ed = hermitian_eigen(matrix_, tol.hermiticity_tol);
  require(ed.eigenvalues.minCoeff() >= -tol.psd_tol,
          "DensityOperator: matrix has an eigenvalue below -psd_tol");
}

DensityOperator DensityOperator::maximally_mixed(int dim) {
  require(dim >= 1, "maximally_mixed: dim must be positive");
  return DensityOperator(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityOperator DensityOperator::basis_state(int dim, int k) {
  require(dim >= 1 && k >= 0 && k < dim, "basis_state: index out of range");
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(k, k) = 1.0;
  return DensityOperator(std::move(m));
}

DensityOperator DensityOperator::random(int dim, uint64_t seed) {
  require(dim >= 1, "random: dim must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix g(dim, dim);
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      g(i, j) = complex_t{gauss(rng), gauss(rng)};
    }
  }
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityOperator(std::move(rho));
}

// --- QuantumOperation --- //

QuantumOperation::QuantumOperation(std::vector<ComplexMatrix> kraus, const Tolerances& tol)
    : kraus_(std::move(kraus)) {
  require(!kraus_.empty(), "QuantumOperation: Kraus list must be nonempty");
  const Eigen::Index d = kraus_.front().rows();
  require(d > 0, "QuantumOperation: dimension must be positive");
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& k : kraus_) {
    require(k.rows() == d && k.cols() == d,
            "QuantumOperation: all Kraus operators must be d x d");
    require(is_finite(k), "QuantumOperation: Kraus entries must be finite");
    sum += k.adjoint() * k;
  }
  const auto ed = hermitian_eigen(sum, tol.hermiticity_tol);
  require(ed.eigenvalues.maxCoeff() <= 1.0 + tol.psd_tol,
          "QuantumOperation: sum K^dag K exceeds the identity, map increases trace");
  dim_ = static_cast<int>(d);
}

ComplexMatrix QuantumOperation::apply(const ComplexMatrix& x) const {
  require(x.rows() == dim_ && x.cols() == dim_, "apply: dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& k : kraus_) {
    out += k * x * k.adjoint();
  }
  return out;
}

ComplexMatrix QuantumOperation::apply_dual(const ComplexMatrix& x) const {
  require(x.rows() == dim_ && x.cols() == dim_, "apply_dual: dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& k : kraus_) {
    out += k.adjoint() * x * k;
  }
  return out;
}

QuantumOperation QuantumOperation::identity(int dim) {
  return QuantumOperation({ComplexMatrix::Identity(dim, dim)});
}

// --- Effect --- //

Effect::Effect(ComplexMatrix matrix, const Tolerances& tol) : matrix_(std::move(matrix)) {
  require(matrix_.rows() == matrix_.cols() && matrix_.rows() > 0,
          "Effect: matrix must be square and nonempty");
  require(hermiticity_residual(matrix_) <= tol.hermiticity_tol,
          "Effect: matrix not Hermitian within tolerance");
  const auto ed = hermitian_eigen(matrix_, tol.hermiticity_tol);
  require(ed.eigenvalues.minCoeff() >= -tol.psd_tol,
          "Effect: eigenvalue below zero tolerance");
  require(ed.eigenvalues.maxCoeff() <= 1.0 + tol.psd_tol,
          "Effect: eigenvalue above one, operator is not an effect");
}

// --- Instrument --- //

Instrument::Instrument(int dim, std::vector<QuantumOperation> operations, std::string label)
    : dim_(dim), operations_(std::move(operations)), label_(std::move(label)) {
  require(dim_ > 0, "Instrument: dimension must be positive");
  require(operations_.size() >= 2, "Instrument: needs at least 2 outcomes");
  for (const auto& op : operations_) {
    require(op.dim() == dim_, "Instrument: operation dimension mismatch");
  }
}

Effect Instrument::effect(int j, const Tolerances& tol) const {
  require(j >= 0 && j < outcomes(), "Instrument::effect: outcome out of range");
  return Effect(operations_[static_cast<size_t>(j)].apply_dual(
                    ComplexMatrix::Identity(dim_, dim_)),
                tol);
}

std::vector<Effect> Instrument::effects(const Tolerances& tol) const {
  std::vector<Effect> out;
  out.reserve(static_cast<size_t>(outcomes()));
  for (int j = 0; j < outcomes(); ++j) {
    out.push_back(effect(j, tol));
  }
  return out;
}

bool ValidationReport::passed() const {
  for (const auto& c : checks) {
    if (!c.pass) {
      return false;
    }
  }
  return true;
}

ValidationReport validate(const Instrument& instr, const Tolerances& tol) {
  ValidationReport report;
  const int d = instr.dim();
  const ComplexMatrix identity = ComplexMatrix::Identity(d, d);

  ComplexMatrix effect_sum = ComplexMatrix::Zero(d, d);
  double worst_neg = 0.0;  // most negative effect eigenvalue
  double worst_over = 0.0; // largest excess above 1
  double worst_herm = 0.0;
  for (int j = 0; j < instr.outcomes(); ++j) {
    const ComplexMatrix e = instr.operation(j).apply_dual(identity);
    effect_sum += e;
    worst_herm = std::max(worst_herm, hermiticity_residual(e));
    const auto ed = hermitian_eigen(0.5 * (e + e.adjoint()), tol.hermiticity_tol);
    worst_neg = std::max(worst_neg, -ed.eigenvalues.minCoeff());
    worst_over = std::max(worst_over, ed.eigenvalues.maxCoeff() - 1.0);
  }

  const double completeness = (effect_sum - identity).cwiseAbs().maxCoeff();
  report.checks.push_back({"effects_resolve_identity", completeness <= tol.trace_tol,
                           completeness, tol.trace_tol});
  report.checks.push_back({"effects_hermitian", worst_herm <= tol.hermiticity_tol,
                           worst_herm, tol.hermiticity_tol});
  report.checks.push_back({"effects_psd", worst_neg <= tol.psd_tol, worst_neg, tol.psd_tol});
  report.checks.push_back({"effects_below_identity", worst_over <= tol.psd_tol,
                           worst_over, tol.psd_tol});
  return report;
}

// --- Built-in families --- //

Instrument make_example1(double p) {
  require(p >= 0.0 && p <= 1.0, "make_example1: p must lie in [0, 1]");
  const double s = 1.0 / std::sqrt(2.0);
  ComplexMatrix e(2, 2), t(2, 2), b(2, 2);
  e << 0, std::sqrt(p), 0, 0;
  t << std::sqrt(1.0 - p), 0, 0, 1;
  b << 1, 0, 0, std::sqrt(1.0 - p);
  const ComplexMatrix h = hadamard();
  const ComplexMatrix v = v_unitary();

  QuantumOperation op1({s * (h * e), s * (h * t)});
  QuantumOperation op2({s * (v * e.adjoint()), s * (v * b)});
  return Instrument(2, {std::move(op1), std::move(op2)},
                    "example1(p=" + std::to_string(p) + ")");
}

Instrument make_example2(double p) {
  require(p >= 0.0 && p <= 1.0, "make_example2: p must lie in [0, 1]");
  const double s = 1.0 / std::sqrt(2.0);
  ComplexMatrix d1(2, 2), d2(2, 2);
  d1 << std::sqrt(1.0 - p), 0, 0, std::sqrt(1.0 + p);
  d2 << std::sqrt(1.0 + p), 0, 0, std::sqrt(1.0 - p);

  QuantumOperation op1({s * (hadamard() * d1)});
  QuantumOperation op2({s * (v_unitary() * d2)});
  return Instrument(2, {std::move(op1), std::move(op2)},
                    "example2(p=" + std::to_string(p) + ")");
}

std::vector<ComplexMatrix> mub_unitaries(int d) {
  require(is_prime(d), "mub_unitaries: built-in construction requires prime d");
  if (d == 2) {
    return {hadamard(), v_unitary()};
  }
  // Wootters-Fields bases for an odd prime: basis r has vectors with
  // components w^(r k^2 + k l) / sqrt(d), w = exp(i 2 pi / d). For d = 3,
  // r = 0, 1, 2 reproduce the transition matrices of the qutrit example.
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<size_t>(d));
  const double step = 2.0 * std::numbers::pi / d;
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int r = 0; r < d; ++r) {
    ComplexMatrix u_dag(d, d);
    for (int k = 0; k < d; ++k) {
      for (int l = 0; l < d; ++l) {
        const long long phase =
            (static_cast<long long>(r) * k * k + static_cast<long long>(k) * l) % d;
        u_dag(k, l) = norm * std::exp(kI * (step * static_cast<double>(phase)));
      }
    }
    out.push_back(u_dag.adjoint());
  }
  return out;
}

namespace {

Instrument build_qudit(int d, double p, const std::vector<ComplexMatrix>& unitaries,
                       std::string label) {
  require(d >= 2, "qudit instrument: d must be at least 2");
  require(p >= -1.0 / (d - 1) - 1e-12 && p <= 1.0 + 1e-12,
          "qudit instrument: p must lie in [-1/(d-1), 1]");
  require(static_cast<int>(unitaries.size()) == d,
          "qudit instrument: expected exactly d unitaries");

  std::vector<QuantumOperation> ops;
  ops.reserve(unitaries.size());
  const ComplexMatrix identity = ComplexMatrix::Identity(d, d);
  for (int k = 0; k < d; ++k) {
    const ComplexMatrix& u = unitaries[static_cast<size_t>(k)];
    require(u.rows() == d && u.cols() == d, "qudit instrument: unitary has wrong dimension");
    const double unitarity = (u.adjoint() * u - identity).cwiseAbs().maxCoeff();
    require(unitarity <= 1e-9, "qudit instrument: matrix " + std::to_string(k + 1) +
                                   " is not unitary (residual " + std::to_string(unitarity) + ")");
    ComplexMatrix arm = ((1.0 - p) / d) * identity;
    arm(k, k) += p;
    ops.emplace_back(std::vector<ComplexMatrix>{u * psd_sqrt(arm)});
  }
  return Instrument(d, std::move(ops), std::move(label));
}

} // namespace

Instrument make_qudit_custom(int d, double p, const std::vector<ComplexMatrix>& unitaries) {
  return build_qudit(d, p, unitaries,
                     "qudit_custom(d=" + std::to_string(d) + ",p=" + std::to_string(p) + ")");
}

Instrument make_qudit_mub(int d, double p) {
  require(is_prime(d), "make_qudit_mub: d must be prime");
  return build_qudit(d, p, mub_unitaries(d),
                     "qudit_mub(d=" + std::to_string(d) + ",p=" + std::to_string(p) + ")");
}

ComplexMatrix shift_unitary(int n_qubits) {
  require(n_qubits >= 1, "shift_unitary: need at least one qubit");
  const int dim = 1 << n_qubits;
  ComplexMatrix u = ComplexMatrix::Zero(dim, dim);
  for (int c = 0; c < dim; ++c) {
    // |j1 ... jn> -> |jn j1 ... j(n-1)>: rotate the bit string right,
    // with j1 stored as the most significant bit.
    const int r = ((c & 1) << (n_qubits - 1)) | (c >> 1);
    u(r, c) = 1.0;
  }
  return u;
}

Instrument make_nqubit_shift(int n, const Instrument& base) {
  require(n >= 1, "make_nqubit_shift: n must be at least 1");
  require(base.dim() == 2 && base.outcomes() == 2,
          "make_nqubit_shift: base must be a 2-outcome qubit instrument");
  const int rest_dim = 1 << (n - 1);
  const ComplexMatrix rest = ComplexMatrix::Identity(rest_dim, rest_dim);
  const ComplexMatrix shift = shift_unitary(n);

  std::vector<QuantumOperation> ops;
  for (const auto& base_op : base.operations()) {
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(base_op.kraus().size());
    for (const auto& k : base_op.kraus()) {
      kraus.push_back(shift * kron(k, rest));
    }
    ops.emplace_back(std::move(kraus));
  }
  return Instrument(1 << n, std::move(ops),
                    "nqubit_shift(n=" + std::to_string(n) + "," + base.label() + ")");
}

Instrument make_luders(const std::vector<Effect>& effects) {
  require(effects.size() >= 2, "make_luders: needs at least 2 effects");
  const int d = effects.front().dim();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& e : effects) {
    require(e.dim() == d, "make_luders: effect dimension mismatch");
    sum += e.matrix();
  }
  const double completeness = (sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  require(completeness <= Tolerances{}.trace_tol,
          "make_luders: effects do not resolve the identity (residual " +
              std::to_string(completeness) + ")");

  std::vector<QuantumOperation> ops;
  ops.reserve(effects.size());
  for (const auto& e : effects) {
    ops.emplace_back(std::vector<ComplexMatrix>{psd_sqrt(e.matrix())});
  }
  return Instrument(d, std::move(ops), "luders(m=" + std::to_string(effects.size()) + ")");
}

Instrument make_projective(const std::vector<Effect>& projectors,
                           const std::optional<std::vector<QuantumOperation>>& post_channels) {
  require(projectors.size() >= 2, "make_projective: needs at least 2 projectors");
  const int d = projectors.front().dim();
  const Tolerances tol;

  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (size_t i = 0; i < projectors.size(); ++i) {
    const ComplexMatrix& e = projectors[i].matrix();
    require(projectors[i].dim() == d, "make_projective: projector dimension mismatch");
    const double idem = (e * e - e).cwiseAbs().maxCoeff();
    require(idem <= tol.psd_tol, "make_projective: effect " + std::to_string(i + 1) +
                                     " is not a projector (residual " + std::to_string(idem) + ")");
    for (size_t j = 0; j < i; ++j) {
      const double overlap = (e * projectors[j].matrix()).cwiseAbs().maxCoeff();
      require(overlap <= tol.psd_tol, "make_projective: projectors are not mutually orthogonal");
    }
    sum += e;
  }
  require((sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff() <= tol.trace_tol,
          "make_projective: projectors do not resolve the identity");

  std::vector<QuantumOperation> channels;
  if (post_channels.has_value()) {
    channels = *post_channels;
    require(channels.size() == projectors.size(),
            "make_projective: need one post channel per projector");
  } else {
    channels.assign(projectors.size(), QuantumOperation::identity(d));
  }

  std::vector<QuantumOperation> ops;
  for (size_t j = 0; j < projectors.size(); ++j) {
    const auto& phi = channels[j];
    require(phi.dim() == d, "make_projective: post channel dimension mismatch");
    ComplexMatrix ksum = ComplexMatrix::Zero(d, d);
    for (const auto& f : phi.kraus()) {
      ksum += f.adjoint() * f;
    }
    require((ksum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff() <= tol.trace_tol,
            "make_projective: post channel " + std::to_string(j + 1) + " is not trace preserving");
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(phi.kraus().size());
    for (const auto& f : phi.kraus()) {
      kraus.push_back(f * projectors[j].matrix());
    }
    ops.emplace_back(std::move(kraus));
  }
  return Instrument(d, std::move(ops), "projective(m=" + std::to_string(projectors.size()) + ")");
}

std::vector<Effect> sic_qubit_effects() {
  const double s = 1.0 / std::sqrt(3.0);
  const double bloch[4][3] = {
      {s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
  const ComplexMatrix sx = pauli_x();
  const ComplexMatrix sy = pauli_y();
  const ComplexMatrix sz = pauli_z();
  const ComplexMatrix identity = ComplexMatrix::Identity(2, 2);

  std::vector<Effect> out;
  out.reserve(4);
  for (const auto& a : bloch) {
    out.emplace_back(0.25 * (identity + a[0] * sx + a[1] * sy + a[2] * sz));
  }
  return out;
}

} // namespace seqtomo
