#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "seqtomo/instrument.hpp"
#include "seqtomo/sequential.hpp"

namespace seqtomo {

// Counts of observed outcome sequences from repeated depth-N runs.
struct TrajectoryBatch {
  std::string label;
  int depth = 0;
  int outcomes = 0;
  uint64_t seed = 0;
  uint64_t total = 0;
  std::map<std::vector<int>, uint64_t> counts; // key: 1-based outcome sequence

  // Empirical frequencies in canonical flat order (length m^N).
  RealVector frequencies() const;
};

// Draw shots by sequential conditioning: at each step outcome j is taken
// with probability tr(I_j[w]) / tr(w) and the unnormalized state advances
// to I_j[w]. Deterministic given the seed; shots use independent
// counter-derived streams.
TrajectoryBatch sample_trajectories(const Instrument& instr, int depth,
                                    const DensityOperator& rho, uint64_t shots,
                                    uint64_t seed, size_t leaf_cap = kDefaultLeafCap);

struct ReconstructionResult {
  DensityOperator estimate;
  ComplexMatrix raw_estimate; // pre-projection least-squares output
  double residual = 0.0;      // Euclidean misfit of the returned estimate
  bool projected = false;
};

// Linear-inversion tomography: least-squares solve of tr(rho E_x) = p_x
// with the unit-trace constraint appended, optionally followed by the
// physical projection (hermitize, clip negative eigenvalues, renormalize).
// Requires an informationally complete effect set.
ReconstructionResult reconstruct(const EffectSet& es, const RealVector& probabilities,
                                 bool project = true, const Tolerances& tol = {});

// 1/2 * sum |eigenvalues of (a - b)|.
double trace_distance(const DensityOperator& a, const DensityOperator& b);

} // namespace seqtomo
