#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seqtomo/linalg.hpp"

namespace seqtomo {

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

// A validated quantum state: Hermitian, PSD, unit trace.
class DensityOperator {
 public:
  DensityOperator(ComplexMatrix matrix, const Tolerances& tol = {});

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }

  static DensityOperator maximally_mixed(int dim);
  static DensityOperator basis_state(int dim, int k);
  // Ginibre-distributed random state, reproducible from the seed.
  static DensityOperator random(int dim, uint64_t seed);

 private:
  ComplexMatrix matrix_;
};

// Completely positive trace-nonincreasing map in Kraus form.
class QuantumOperation {
 public:
  QuantumOperation(std::vector<ComplexMatrix> kraus, const Tolerances& tol = {});

  int dim() const { return dim_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

  // X -> sum_a K_a X K_a^dag
  ComplexMatrix apply(const ComplexMatrix& x) const;
  // X -> sum_a K_a^dag X K_a, adjoint under the trace inner product
  ComplexMatrix apply_dual(const ComplexMatrix& x) const;

  static QuantumOperation identity(int dim);

 private:
  int dim_;
  std::vector<ComplexMatrix> kraus_;
};

// Hermitian operator with O <= E <= I.
class Effect {
 public:
  Effect(ComplexMatrix matrix, const Tolerances& tol = {});

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

struct ValidationCheck {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  double threshold = 0.0;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool passed() const;
};

// Ordered finite collection of quantum operations whose dual images of the
// identity resolve the identity. The constructor checks structure only;
// validate() measures the instrument invariants and reports residuals, so
// deliberately broken instruments can be constructed and diagnosed.
class Instrument {
 public:
  Instrument(int dim, std::vector<QuantumOperation> operations, std::string label);

  int dim() const { return dim_; }
  int outcomes() const { return static_cast<int>(operations_.size()); }
  const std::vector<QuantumOperation>& operations() const { return operations_; }
  const QuantumOperation& operation(int j) const { return operations_[static_cast<size_t>(j)]; }
  const std::string& label() const { return label_; }

  // Single-use effect E_j, the dual image of the identity.
  Effect effect(int j, const Tolerances& tol = {}) const;
  std::vector<Effect> effects(const Tolerances& tol = {}) const;

 private:
  int dim_;
  std::vector<QuantumOperation> operations_;
  std::string label_;
};

ValidationReport validate(const Instrument& instr, const Tolerances& tol = {});

// --- Built-in instrument families --- //

// Dichotomic qubit instrument with Kraus-rank-2 operations,
// {HE/sqrt2, HT/sqrt2} and {VE^dag/sqrt2, VB/sqrt2}.
Instrument make_example1(double p);

// Dichotomic qubit instrument with Kraus-rank-1 operations,
// H diag(sqrt(1-p), sqrt(1+p))/sqrt2 and V diag(sqrt(1+p), sqrt(1-p))/sqrt2.
Instrument make_example2(double p);

// d-outcome instrument I_k = U_k sqrt((1-p)/d I + p|k><k|) (.) (...) U_k^dag
// with the built-in mutually unbiased basis unitaries; d must be prime and
// -1/(d-1) <= p <= 1.
Instrument make_qudit_mub(int d, double p);

// Same construction with caller-supplied unitaries; any d >= 2.
Instrument make_qudit_custom(int d, double p, const std::vector<ComplexMatrix>& unitaries);

// Dichotomic n-qubit instrument combining a base qubit instrument with a
// cyclic particle shift: K -> U_shift (K otimes I_{2^(n-1)}).
Instrument make_nqubit_shift(int n, const Instrument& base);

// Luders instrument of a POVM: single Kraus operator sqrt(E_j) per outcome.
Instrument make_luders(const std::vector<Effect>& effects);

// Sharp instrument I_j = Phi_j[E_j . E_j] from orthogonal projectors; the
// post channels default to identity channels and must be trace preserving.
Instrument make_projective(const std::vector<Effect>& projectors,
                           const std::optional<std::vector<QuantumOperation>>& post_channels = std::nullopt);

// Transition unitaries {U_1..U_d} used by make_qudit_mub: columns of U_k^dag
// form a basis mutually unbiased with the computational one (and with each
// other for prime d). d = 2 uses the H/V pair, odd primes the
// Wootters-Fields quadratic-phase family.
std::vector<ComplexMatrix> mub_unitaries(int d);

// Cyclic shift on n qubits, |j1 j2 ... jn> -> |jn j1 ... j(n-1)>.
ComplexMatrix shift_unitary(int n_qubits);

// Tetrahedral qubit SIC-POVM, four effects |psi_k><psi_k| / 2.
std::vector<Effect> sic_qubit_effects();

bool is_prime(int n);

} // namespace seqtomo
