#pragma once

#include <optional>
#include <string>
#include <vector>

#include "seqtomo/instrument.hpp"
#include "seqtomo/linalg.hpp"

namespace seqtomo {

// Outcome sequence j1 j2 ... jN of N sequential uses; entries are 1-based,
// entries[0] is the first measurement performed.
class MultiIndex {
 public:
  MultiIndex(std::vector<int> entries, int outcomes);

  const std::vector<int>& entries() const { return entries_; }
  int depth() const { return static_cast<int>(entries_.size()); }
  int outcomes() const { return outcomes_; }

  // Position in the canonical flat order: j1 slowest, jN fastest.
  size_t flat_index() const;
  static MultiIndex from_flat(size_t index, int depth, int outcomes);

  // "121" for single-digit outcomes, "1,2,12" when m > 9.
  std::string to_string() const;
  static MultiIndex parse(const std::string& text, int outcomes, int depth);

  bool operator==(const MultiIndex& other) const = default;

 private:
  std::vector<int> entries_;
  int outcomes_;
};

// Default bound on the number of measurement-tree leaves m^N.
inline constexpr size_t kDefaultLeafCap = 4096;

// The m^N collective effects of a depth-N measurement tree, in canonical
// flat order, with the informational-completeness verdict.
struct EffectSet {
  int dim = 0;
  int depth = 0;
  int outcomes = 0;
  std::vector<Effect> effects;
  int span_rank = 0;
  bool is_ic = false;

  const Effect& at(const MultiIndex& idx) const { return effects[idx.flat_index()]; }
};

// Tagged condition number: the Gram matrix of a non-spanning effect set is
// singular by construction, so infinity is a structural verdict, not a
// large float.
struct ConditionNumber {
  bool finite = false;
  double value = 0.0;    // meaningful only when finite
  std::string reason;    // set when infinite

  static ConditionNumber make_finite(double v) { return {true, v, ""}; }
  static ConditionNumber make_infinite(std::string why) { return {false, 0.0, std::move(why)}; }
};

struct GramReport {
  Eigen::MatrixXd gram;       // G_xy = tr(E_x E_y), real symmetric
  RealVector eigenvalues;     // sorted descending
  ConditionNumber condition_number;
};

// Effects E_{j1..jN} = I_j1^dag[... I_jN^dag[I]] for every multi-index,
// with the span rank over all m^N effects. Throws when m^N exceeds the cap.
EffectSet collective_effects(const Instrument& instr, int depth,
                             size_t leaf_cap = kDefaultLeafCap,
                             const Tolerances& tol = {});

// Forward-composed probabilities p_{j1..jN} = tr(I_jN[...I_j1[rho]]) in the
// same canonical order. Entries are clipped at zero and sum to one.
RealVector outcome_distribution(const Instrument& instr, int depth,
                                const DensityOperator& rho,
                                size_t leaf_cap = kDefaultLeafCap);

GramReport gram_report(const EffectSet& es, const Tolerances& tol = {});

// Smallest N with m^N >= d^2 (lower bound on uses needed for completeness).
int min_depth_bound(int m, int d);

struct IcSearchResult {
  std::optional<int> first_ic_depth;
  std::vector<int> rank_per_depth; // rank_per_depth[k] is the rank at depth k+1
};

IcSearchResult ic_search(const Instrument& instr, int max_depth,
                         size_t leaf_cap = kDefaultLeafCap,
                         const Tolerances& tol = {});

} // namespace seqtomo
