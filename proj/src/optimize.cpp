#include "seqtomo/optimize.hpp"

#include <cmath>
#include <stdexcept>

namespace seqtomo {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) {
    throw std::invalid_argument(msg);
  }
}

double finite_lambda(const InstrumentFamily& family, int depth, double p, size_t leaf_cap) {
  const ConditionNumber cn = condition_number_at(family, depth, p, leaf_cap);
  if (!cn.finite) {
    throw std::invalid_argument("refine_minimum: Lambda is infinite at p = " +
                                std::to_string(p));
  }
  return cn.value;
}

} // namespace

InstrumentFamily family_example1() {
  return {"example1", 0.0, 1.0, [](double p) { return make_example1(p); }};
}

InstrumentFamily family_example2() {
  return {"example2", 0.0, 1.0, [](double p) { return make_example2(p); }};
}

InstrumentFamily family_qudit_mub(int d) {
  return {"qudit_mub(d=" + std::to_string(d) + ")", 0.0, 1.0,
          [d](double p) { return make_qudit_mub(d, p); }};
}

InstrumentFamily family_nqubit_shift(int n, const InstrumentFamily& base) {
  return {"nqubit_shift(n=" + std::to_string(n) + "," + base.name + ")", base.p_min,
          base.p_max,
          [n, base](double p) { return make_nqubit_shift(n, base.make(p)); }};
}

ConditionNumber condition_number_at(const InstrumentFamily& family, int depth, double p,
                                    size_t leaf_cap) {
  const Instrument instr = family.make(p);
  const EffectSet es = collective_effects(instr, depth, leaf_cap);
  return gram_report(es).condition_number;
}

ScanResult scan_condition_number(const InstrumentFamily& family, int depth, int grid_points,
                                 double p_lo, double p_hi, size_t leaf_cap) {
  require(grid_points >= 3, "scan_condition_number: need at least 3 grid points");
  require(p_lo < p_hi, "scan_condition_number: empty parameter range");
  require(p_lo >= family.p_min - 1e-12 && p_hi <= family.p_max + 1e-12,
          "scan_condition_number: range outside the family's feasible domain");

  ScanResult result;
  result.family = family.name;
  result.depth = depth;
  result.grid.reserve(static_cast<size_t>(grid_points));

  // Strictly interior uniform grid; the endpoints are excluded.
  const double step = (p_hi - p_lo) / (grid_points + 1);
  bool any_finite = false;
  double best_lambda = 0.0;
  double best_p = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double p = p_lo + step * (i + 1);
    const ConditionNumber cn = condition_number_at(family, depth, p, leaf_cap);
    result.grid.push_back({p, cn});
    if (cn.finite && (!any_finite || cn.value < best_lambda)) {
      any_finite = true;
      best_lambda = cn.value;
      best_p = p;
    }
  }
  if (!any_finite) {
    throw std::runtime_error("scan_condition_number: every grid point is infeasible "
                             "(no informationally complete parameter found)");
  }
  result.best_p = best_p;
  result.best_lambda = best_lambda;
  return result;
}

ScanResult scan_condition_number(const InstrumentFamily& family, int depth, int grid_points,
                                 size_t leaf_cap) {
  return scan_condition_number(family, depth, grid_points, family.p_min, family.p_max,
                               leaf_cap);
}

RefineResult refine_minimum(const InstrumentFamily& family, int depth, double p_lo,
                            double p_mid, double p_hi, size_t leaf_cap) {
  require(p_lo < p_mid && p_mid < p_hi, "refine_minimum: bracket must be ordered");
  const double f_lo = finite_lambda(family, depth, p_lo, leaf_cap);
  const double f_hi = finite_lambda(family, depth, p_hi, leaf_cap);
  double f_mid = finite_lambda(family, depth, p_mid, leaf_cap);
  require(f_mid < f_lo && f_mid < f_hi,
          "refine_minimum: midpoint does not bracket a minimum");

  // Golden-section with the current best kept as the probe reference.
  constexpr double kInvPhi = 0.6180339887498949;
  double a = p_lo;
  double b = p_hi;
  double x_best = p_mid;
  int iterations = 0;
  while (b - a > 1e-6) {
    // Probe inside the larger of the two sub-intervals.
    const bool probe_right = (b - x_best) > (x_best - a);
    const double x_new = probe_right ? b - kInvPhi * (b - x_best)
                                     : a + kInvPhi * (x_best - a);
    const double f_new = finite_lambda(family, depth, x_new, leaf_cap);
    // Ties go to the smaller parameter value.
    const bool new_wins = (f_new < f_mid) || (f_new == f_mid && x_new < x_best);
    if (new_wins) {
      if (x_new < x_best) {
        b = x_best;
      } else {
        a = x_best;
      }
      x_best = x_new;
      f_mid = f_new;
    } else {
      if (x_new < x_best) {
        a = x_new;
      } else {
        b = x_new;
      }
    }
    ++iterations;
  }
  return {x_best, f_mid, iterations};
}

ScanResult optimize_parameter(const InstrumentFamily& family, int depth, int grid_points,
                              size_t leaf_cap) {
  return optimize_parameter(family, depth, grid_points, family.p_min, family.p_max,
                            leaf_cap);
}

ScanResult optimize_parameter(const InstrumentFamily& family, int depth, int grid_points,
                              double p_lo, double p_hi, size_t leaf_cap) {
  ScanResult scan = scan_condition_number(family, depth, grid_points, p_lo, p_hi, leaf_cap);

  // Bracket the best grid point with its nearest finite neighbours; fall
  // back to the interval ends when the optimum sits next to an infeasible
  // or boundary point.
  size_t best = 0;
  for (size_t i = 0; i < scan.grid.size(); ++i) {
    if (scan.grid[i].lambda.finite && scan.grid[i].p == scan.best_p) {
      best = i;
      break;
    }
  }
  const bool has_left = best > 0 && scan.grid[best - 1].lambda.finite;
  const bool has_right = best + 1 < scan.grid.size() && scan.grid[best + 1].lambda.finite;
  if (has_left && has_right) {
    const RefineResult refined =
        refine_minimum(family, depth, scan.grid[best - 1].p, scan.grid[best].p,
                       scan.grid[best + 1].p, leaf_cap);
    if (refined.lambda_star <= scan.best_lambda) {
      scan.best_p = refined.p_star;
      scan.best_lambda = refined.lambda_star;
    }
    scan.refinement_iterations = refined.iterations;
  }
  return scan;
}

} // namespace seqtomo
