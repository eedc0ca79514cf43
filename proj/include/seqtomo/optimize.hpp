#pragma once

#include <functional>
#include <string>
#include <vector>

#include "seqtomo/instrument.hpp"
#include "seqtomo/sequential.hpp"

namespace seqtomo {

// A one-parameter instrument family together with the open interval the
// scalar parameter may range over during scans.
struct InstrumentFamily {
  std::string name;
  double p_min = 0.0;
  double p_max = 1.0;
  std::function<Instrument(double)> make;
};

InstrumentFamily family_example1();
InstrumentFamily family_example2();
InstrumentFamily family_qudit_mub(int d);
InstrumentFamily family_nqubit_shift(int n, const InstrumentFamily& base);

struct GridPoint {
  double p = 0.0;
  ConditionNumber lambda;
};

struct ScanResult {
  std::string family;
  int depth = 0;
  std::vector<GridPoint> grid;
  double best_p = 0.0;
  double best_lambda = 0.0;
  int refinement_iterations = 0;
};

// Depth-N Gram condition number at the parameter value.
ConditionNumber condition_number_at(const InstrumentFamily& family, int depth, double p,
                                    size_t leaf_cap = kDefaultLeafCap);

// Evaluate Lambda on a uniform grid strictly inside (p_lo, p_hi) and return
// the best finite grid point. Throws std::runtime_error when every grid
// point is infeasible (non-IC).
ScanResult scan_condition_number(const InstrumentFamily& family, int depth, int grid_points,
                                 double p_lo, double p_hi,
                                 size_t leaf_cap = kDefaultLeafCap);
ScanResult scan_condition_number(const InstrumentFamily& family, int depth, int grid_points,
                                 size_t leaf_cap = kDefaultLeafCap);

struct RefineResult {
  double p_star = 0.0;
  double lambda_star = 0.0;
  int iterations = 0;
};

// Golden-section refinement of a bracketed minimum; the bracket must
// satisfy Lambda(p_mid) < min(Lambda(p_lo), Lambda(p_hi)) with all three
// finite. Stops when the bracket width drops below 1e-6.
RefineResult refine_minimum(const InstrumentFamily& family, int depth,
                            double p_lo, double p_mid, double p_hi,
                            size_t leaf_cap = kDefaultLeafCap);

// Scan, bracket the best grid point, refine; the combined driver used by
// the CLI. Updates best_p / best_lambda with the refined optimum.
ScanResult optimize_parameter(const InstrumentFamily& family, int depth, int grid_points,
                              double p_lo, double p_hi,
                              size_t leaf_cap = kDefaultLeafCap);
ScanResult optimize_parameter(const InstrumentFamily& family, int depth, int grid_points,
                              size_t leaf_cap = kDefaultLeafCap);

} // namespace seqtomo
