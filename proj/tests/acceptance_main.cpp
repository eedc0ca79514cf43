// Acceptance suite: one check per release criterion, one PASS/FAIL line
// each, nonzero exit when anything fails. Expected values are frozen from
// the analytic qubit optima, the published reference numbers, and a
// 1e-4-grid reference sweep for the qutrit family.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "seqtomo/optimize.hpp"
#include "seqtomo/recon.hpp"
#include "seqtomo/sequential.hpp"
#include "testutil.hpp"

using namespace seqtomo;
namespace tu = seqtomo::testutil;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      detail << " [FAILED: " << what << "]";
    }
  }
};

// Reference optimum of the d=3 MUB family, frozen from a 1e-4-step grid
// sweep over (0, 1) followed by golden refinement.
constexpr double kQutritGridP = 0.6677;
constexpr double kQutritGridLambda = 17.119363028929;

double lambda_at(const Instrument& instr, int depth) {
  const GramReport r = gram_report(collective_effects(instr, depth));
  return r.condition_number.finite ? r.condition_number.value
                                   : std::numeric_limits<double>::infinity();
}

Outcome criterion_example1_optimum() {
  Outcome out;
  const double lambda = lambda_at(make_example1(2.0 / 3.0), 2);
  out.detail << "lambda(p=2/3, N=2) = " << lambda;
  out.expect(std::abs(lambda - 13.5) <= 1e-6, "lambda differs from 13.5 beyond 1e-6");

  const ScanResult best = optimize_parameter(family_example1(), 2, 101);
  out.detail << ", optimizer p* = " << best.best_p;
  out.expect(std::abs(best.best_p - 2.0 / 3.0) <= 1e-3, "p* not within 1e-3 of 2/3");
  return out;
}

Outcome criterion_example2_optimum() {
  Outcome out;
  const double lambda = lambda_at(make_example2(1.0 / std::sqrt(2.0)), 2);
  out.detail << "lambda(p=1/sqrt2, N=2) = " << lambda;
  out.expect(std::abs(lambda - 8.0) <= 1e-6, "lambda differs from 8 beyond 1e-6");

  const ScanResult best = optimize_parameter(family_example2(), 2, 101);
  out.detail << ", optimizer p* = " << best.best_p;
  out.expect(std::abs(best.best_p - 0.70711) <= 1e-3, "p* not within 1e-3 of 0.70711");
  return out;
}

Outcome criterion_qutrit_optimum() {
  Outcome out;
  const ScanResult best = optimize_parameter(family_qudit_mub(3), 2, 101);
  out.detail << "optimizer p* = " << best.best_p << ", lambda* = " << best.best_lambda;
  out.expect(best.best_p >= 0.67 && best.best_p <= 0.71, "p* outside [0.67, 0.71]");
  out.expect(best.best_lambda >= 16.0 && best.best_lambda <= 18.0,
             "lambda* outside [16, 18]");
  out.expect(std::abs(best.best_p - kQutritGridP) <= 1e-4,
             "p* not within 1e-4 of the grid reference " + std::to_string(kQutritGridP));
  out.expect(std::abs(best.best_lambda - kQutritGridLambda) <= 1e-4,
             "lambda* not within 1e-4 of the grid reference");
  return out;
}

Outcome criterion_sic_reference() {
  Outcome out;
  const double lambda = lambda_at(make_luders(sic_qubit_effects()), 1);
  out.detail << "SIC depth-1 lambda = " << lambda;
  out.expect(std::abs(lambda - 3.0) <= 1e-9, "lambda differs from 3 beyond 1e-9");
  return out;
}

Outcome criterion_ic_boundary() {
  Outcome out;
  int interior_ranks = 0;
  for (double p : {0.1, 0.5, 0.9}) {
    for (bool first : {true, false}) {
      const Instrument instr = first ? make_example1(p) : make_example2(p);
      const EffectSet es = collective_effects(instr, 2);
      out.expect(es.span_rank == 4, "interior p should give rank 4");
      interior_ranks += es.span_rank;
    }
  }
  int boundary_max = 0;
  for (double p : {0.0, 1.0}) {
    for (bool first : {true, false}) {
      const Instrument instr = first ? make_example1(p) : make_example2(p);
      const EffectSet es = collective_effects(instr, 2);
      out.expect(es.span_rank < 4, "boundary p should give rank < 4");
      boundary_max = std::max(boundary_max, es.span_rank);
    }
  }
  out.detail << "interior ranks all 4 (" << interior_ranks / 6
             << " avg), boundary max rank " << boundary_max;
  return out;
}

Outcome criterion_closed_forms() {
  Outcome out;
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix sx = pauli_x(), sy = pauli_y(), sz = pauli_z();
  double worst = 0.0;
  for (double p : {0.1, 0.5, 0.9}) {
    for (bool rank_two : {true, false}) {
      const double q = rank_two ? p * std::sqrt(1.0 - p) : p * std::sqrt(1.0 - p * p);
      const std::vector<ComplexMatrix> expected = {
          0.25 * (id - p * sz - q * sx), 0.25 * (id - p * sz + q * sx),
          0.25 * (id + p * sz - q * sy), 0.25 * (id + p * sz + q * sy)};
      const EffectSet es =
          collective_effects(rank_two ? make_example1(p) : make_example2(p), 2);
      for (size_t i = 0; i < 4; ++i) {
        worst = std::max(worst,
                         (es.effects[i].matrix() - expected[i]).cwiseAbs().maxCoeff());
      }
    }
  }
  out.detail << "max entrywise deviation " << worst;
  out.expect(worst <= 1e-12, "reference effect forms deviate beyond 1e-12");
  return out;
}

Outcome criterion_negative_results() {
  Outcome out;
  auto gen = tu::rng(20250808);
  int worst_rank = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const Instrument luders = make_luders(tu::random_dichotomic_povm(gen));
    const IcSearchResult r = ic_search(luders, 6);
    for (int rank : r.rank_per_depth) {
      worst_rank = std::max(worst_rank, rank);
    }
  }
  for (int trial = 0; trial < 10; ++trial) {
    // Sharp instrument with random genuinely mixing post channels.
    std::uniform_real_distribution<double> unif(0.2, 0.8);
    std::vector<QuantumOperation> channels;
    for (int j = 0; j < 2; ++j) {
      const double q = unif(gen);
      channels.emplace_back(std::vector<ComplexMatrix>{
          std::sqrt(q) * tu::random_unitary(2, gen),
          std::sqrt(1.0 - q) * tu::random_unitary(2, gen)});
    }
    const Instrument sharp =
        make_projective({Effect(DensityOperator::basis_state(2, 0).matrix()),
                         Effect(DensityOperator::basis_state(2, 1).matrix())},
                        channels);
    const IcSearchResult r = ic_search(sharp, 6);
    for (int rank : r.rank_per_depth) {
      worst_rank = std::max(worst_rank, rank);
    }
  }
  out.detail << "max span rank over 20 instruments x depths 1..6 = " << worst_rank;
  out.expect(worst_rank <= 2, "a sharp or 2-outcome Luders tree exceeded rank d");
  return out;
}

Outcome criterion_depth_bound() {
  Outcome out;
  for (int n = 1; n <= 5; ++n) {
    out.expect(min_depth_bound(2, 1 << n) == 2 * n, "min_depth_bound(2, 2^n) != 2n");
  }
  const IcSearchResult r = ic_search(make_nqubit_shift(2, make_example2(0.5)), 4);
  out.detail << "2-qubit shift ranks:";
  for (int rank : r.rank_per_depth) {
    out.detail << ' ' << rank;
  }
  out.expect(r.rank_per_depth[0] < 16 && r.rank_per_depth[1] < 16 &&
                 r.rank_per_depth[2] < 16,
             "should not be IC before depth 4");
  out.expect(r.rank_per_depth[3] == 16, "depth 4 should reach rank 16");
  out.expect(r.first_ic_depth.has_value() && *r.first_ic_depth == 4,
             "first IC depth should be 4");
  return out;
}

Outcome criterion_duality() {
  Outcome out;
  auto gen = tu::rng(1234);
  double worst = 0.0;
  for (int pair = 0; pair < 50; ++pair) {
    Instrument instr = [&]() -> Instrument {
      std::uniform_real_distribution<double> unif(0.15, 0.9);
      switch (pair % 5) {
        case 0: return make_example1(unif(gen));
        case 1: return make_example2(unif(gen));
        case 2: return make_qudit_mub(3, unif(gen));
        case 3: return make_luders(tu::random_dichotomic_povm(gen));
        default: return make_luders(sic_qubit_effects());
      }
    }();
    const int depth = 1 + pair % 3;
    const DensityOperator rho = DensityOperator::random(instr.dim(), 5000 + pair);
    const RealVector forward = outcome_distribution(instr, depth, rho);
    const EffectSet es = collective_effects(instr, depth);
    for (Eigen::Index i = 0; i < forward.size(); ++i) {
      const double via_effect =
          (rho.matrix() * es.effects[static_cast<size_t>(i)].matrix()).trace().real();
      worst = std::max(worst, std::abs(forward(i) - via_effect));
    }
  }
  out.detail << "max |forward - effect| over 50 pairs = " << worst;
  out.expect(worst <= 1e-10, "duality mismatch beyond 1e-10");
  return out;
}

Outcome criterion_tomography_roundtrip() {
  Outcome out;
  double worst = 0.0;
  {
    const Instrument instr = make_example2(1.0 / std::sqrt(2.0));
    const EffectSet es = collective_effects(instr, 2);
    for (uint64_t seed = 1; seed <= 50; ++seed) {
      const DensityOperator truth = DensityOperator::random(2, seed);
      const ReconstructionResult rec =
          reconstruct(es, outcome_distribution(instr, 2, truth));
      worst = std::max(worst, trace_distance(rec.estimate, truth));
    }
  }
  {
    const Instrument instr = make_qudit_mub(3, 0.69);
    const EffectSet es = collective_effects(instr, 2);
    for (uint64_t seed = 1; seed <= 20; ++seed) {
      const DensityOperator truth = DensityOperator::random(3, 700 + seed);
      const ReconstructionResult rec =
          reconstruct(es, outcome_distribution(instr, 2, truth));
      worst = std::max(worst, trace_distance(rec.estimate, truth));
    }
  }
  out.detail << "max trace distance over 70 exact round trips = " << worst;
  out.expect(worst <= 1e-8, "exact reconstruction error beyond 1e-8");
  return out;
}

Outcome criterion_statistical_pipeline() {
  Outcome out;
  const Instrument instr = make_example2(1.0 / std::sqrt(2.0));
  const EffectSet es = collective_effects(instr, 2);

  std::vector<double> medians;
  for (uint64_t shots : {1000ULL, 10000ULL, 100000ULL, 1000000ULL}) {
    std::vector<double> errors;
    for (uint64_t seed = 1; seed <= 20; ++seed) {
      const DensityOperator truth = DensityOperator::random(2, 9000 + seed);
      const TrajectoryBatch batch = sample_trajectories(instr, 2, truth, shots, seed);
      errors.push_back(
          trace_distance(reconstruct(es, batch.frequencies()).estimate, truth));
    }
    std::sort(errors.begin(), errors.end());
    medians.push_back(0.5 * (errors[9] + errors[10]));
  }
  out.detail << "median trace distance by shots {1e3,1e4,1e5,1e6}: ";
  for (double m : medians) {
    out.detail << m << ' ';
  }
  out.expect(medians.back() <= 0.02, "median error at 1e6 shots above 0.02");
  for (size_t i = 0; i + 1 < medians.size(); ++i) {
    out.expect(medians[i + 1] <= medians[i], "median error increased with more shots");
  }
  return out;
}

struct Criterion {
  std::string name;
  double budget_seconds; // 0 when the criterion carries no runtime budget
  std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"example1-optimum", 5.0, criterion_example1_optimum},
      {"example2-optimum", 5.0, criterion_example2_optimum},
      {"qutrit-optimum", 30.0, criterion_qutrit_optimum},
      {"sic-reference", 0.0, criterion_sic_reference},
      {"ic-boundary", 0.0, criterion_ic_boundary},
      {"closed-form-effects", 0.0, criterion_closed_forms},
      {"negative-results", 30.0, criterion_negative_results},
      {"depth-bound", 60.0, criterion_depth_bound},
      {"duality-oracle", 0.0, criterion_duality},
      {"tomography-roundtrip", 0.0, criterion_tomography_roundtrip},
      {"statistical-pipeline", 120.0, criterion_statistical_pipeline},
  };

  // Optional arguments select criteria by name.
  const auto selected = [&](const std::string& name) {
    if (argc <= 1) {
      return true;
    }
    for (int a = 1; a < argc; ++a) {
      if (name == argv[a]) {
        return true;
      }
    }
    return false;
  };

  int failures = 0;
  int executed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    if (!selected(criteria[i].name)) {
      continue;
    }
    ++executed;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome = criteria[i].run();
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[i].budget_seconds > 0.0 && elapsed > criteria[i].budget_seconds) {
      outcome.pass = false;
      outcome.detail << " [FAILED: runtime over " << criteria[i].budget_seconds << " s]";
    }
    failures += outcome.pass ? 0 : 1;
    std::printf("%s  %2zu. %-22s %s  [%.2fs]\n", outcome.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].name.c_str(), outcome.detail.str().c_str(), elapsed);
  }
  if (executed == 0) {
    std::printf("no criterion matches the given names\n");
    return 2;
  }
  std::printf("%d/%d criteria passed\n", executed - failures, executed);
  return failures == 0 ? 0 : 1;
}
