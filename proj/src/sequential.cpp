#include "seqtomo/sequential.hpp"

#include <cmath>
#include <stdexcept>

namespace seqtomo {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) {
    throw std::invalid_argument(msg);
  }
}

size_t checked_leaf_count(int outcomes, int depth, size_t leaf_cap) {
  require(depth >= 1, "depth must be at least 1");
  size_t leaves = 1;
  for (int k = 0; k < depth; ++k) {
    leaves *= static_cast<size_t>(outcomes);
    if (leaves > leaf_cap) {
      throw std::invalid_argument("leaf cap exceeded: m^N > " + std::to_string(leaf_cap));
    }
  }
  return leaves;
}

// One more sequential use: level holds the dual chains for suffixes of
// length L, the result holds length L+1 with the new (earlier) outcome
// slowest-varying, preserving the canonical order.
std::vector<ComplexMatrix> extend_dual_chains(const Instrument& instr,
                                              const std::vector<ComplexMatrix>& level) {
  std::vector<ComplexMatrix> next;
  next.reserve(level.size() * static_cast<size_t>(instr.outcomes()));
  for (int j = 0; j < instr.outcomes(); ++j) {
    for (const auto& e : level) {
      next.push_back(instr.operation(j).apply_dual(e));
    }
  }
  return next;
}

EffectSet effect_set_from_level(const Instrument& instr, int depth,
                                const std::vector<ComplexMatrix>& level,
                                const Tolerances& tol) {
  EffectSet es;
  es.dim = instr.dim();
  es.depth = depth;
  es.outcomes = instr.outcomes();
  es.effects.reserve(level.size());
  ComplexMatrix sum = ComplexMatrix::Zero(instr.dim(), instr.dim());
  for (const auto& e : level) {
    sum += e;
    es.effects.emplace_back(e, tol);
  }
  const double completeness =
      (sum - ComplexMatrix::Identity(instr.dim(), instr.dim())).cwiseAbs().maxCoeff();
  if (completeness > 1e-9) {
    throw std::runtime_error("collective effects do not sum to identity, residual " +
                             std::to_string(completeness));
  }
  es.span_rank = span_rank(level, tol.rank_rel_tol);
  es.is_ic = (es.span_rank == instr.dim() * instr.dim());
  return es;
}

} // namespace

// --- MultiIndex --- //

MultiIndex::MultiIndex(std::vector<int> entries, int outcomes)
    : entries_(std::move(entries)), outcomes_(outcomes) {
  require(outcomes_ >= 2, "MultiIndex: outcomes must be at least 2");
  require(!entries_.empty(), "MultiIndex: entries must be nonempty");
  for (int e : entries_) {
    require(e >= 1 && e <= outcomes_, "MultiIndex: outcome label out of range [1, m]");
  }
}

size_t MultiIndex::flat_index() const {
  size_t idx = 0;
  for (int e : entries_) {
    idx = idx * static_cast<size_t>(outcomes_) + static_cast<size_t>(e - 1);
  }
  return idx;
}

MultiIndex MultiIndex::from_flat(size_t index, int depth, int outcomes) {
  require(depth >= 1, "MultiIndex::from_flat: depth must be positive");
  std::vector<int> entries(static_cast<size_t>(depth));
  for (int k = depth - 1; k >= 0; --k) {
    entries[static_cast<size_t>(k)] = static_cast<int>(index % static_cast<size_t>(outcomes)) + 1;
    index /= static_cast<size_t>(outcomes);
  }
  require(index == 0, "MultiIndex::from_flat: index out of range for m^N");
  return MultiIndex(std::move(entries), outcomes);
}

std::string MultiIndex::to_string() const {
  std::string out;
  const bool commas = outcomes_ > 9;
  for (size_t k = 0; k < entries_.size(); ++k) {
    if (commas && k > 0) {
      out += ',';
    }
    out += std::to_string(entries_[k]);
  }
  return out;
}

MultiIndex MultiIndex::parse(const std::string& text, int outcomes, int depth) {
  std::vector<int> entries;
  if (outcomes > 9) {
    size_t pos = 0;
    while (pos < text.size()) {
      size_t next = text.find(',', pos);
      if (next == std::string::npos) {
        next = text.size();
      }
      entries.push_back(std::stoi(text.substr(pos, next - pos)));
      pos = next + 1;
    }
  } else {
    for (char c : text) {
      require(c >= '1' && c <= '9', "MultiIndex::parse: bad outcome digit");
      entries.push_back(c - '0');
    }
  }
  require(static_cast<int>(entries.size()) == depth,
          "MultiIndex::parse: expected " + std::to_string(depth) + " outcomes, got " +
              std::to_string(entries.size()));
  return MultiIndex(std::move(entries), outcomes);
}

// --- Collective effects --- //

EffectSet collective_effects(const Instrument& instr, int depth, size_t leaf_cap,
                             const Tolerances& tol) {
  checked_leaf_count(instr.outcomes(), depth, leaf_cap);
  std::vector<ComplexMatrix> level = {ComplexMatrix::Identity(instr.dim(), instr.dim())};
  for (int k = 0; k < depth; ++k) {
    level = extend_dual_chains(instr, level);
  }
  return effect_set_from_level(instr, depth, level, tol);
}

RealVector outcome_distribution(const Instrument& instr, int depth,
                                const DensityOperator& rho, size_t leaf_cap) {
  require(rho.dim() == instr.dim(), "outcome_distribution: state dimension mismatch");
  const size_t leaves = checked_leaf_count(instr.outcomes(), depth, leaf_cap);

  // Forward pass: level k holds I_jk[... I_j1[rho]] in canonical order
  // (earlier outcomes slowest).
  std::vector<ComplexMatrix> level = {rho.matrix()};
  for (int k = 0; k < depth; ++k) {
    std::vector<ComplexMatrix> next;
    next.reserve(level.size() * static_cast<size_t>(instr.outcomes()));
    for (const auto& state : level) {
      for (int j = 0; j < instr.outcomes(); ++j) {
        next.push_back(instr.operation(j).apply(state));
      }
    }
    level = std::move(next);
  }

  RealVector probs(static_cast<Eigen::Index>(leaves));
  double sum = 0.0;
  for (size_t i = 0; i < leaves; ++i) {
    double p = level[i].trace().real();
    if (p < -1e-12) {
      throw std::runtime_error("outcome_distribution: negative branch probability " +
                               std::to_string(p));
    }
    p = std::max(p, 0.0);
    probs(static_cast<Eigen::Index>(i)) = p;
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::runtime_error("outcome_distribution: probabilities sum to " +
                             std::to_string(sum));
  }
  return probs;
}

GramReport gram_report(const EffectSet& es, const Tolerances& tol) {
  const Eigen::Index n = static_cast<Eigen::Index>(es.effects.size());
  GramReport report;
  report.gram = Eigen::MatrixXd(n, n);
  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index y = x; y < n; ++y) {
      const double g = (es.effects[static_cast<size_t>(x)].matrix() *
                        es.effects[static_cast<size_t>(y)].matrix())
                           .trace()
                           .real();
      report.gram(x, y) = g;
      report.gram(y, x) = g;
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(report.gram);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("gram_report: eigensolver failed");
  }
  report.eigenvalues = solver.eigenvalues().reverse();

  const double max_abs = report.eigenvalues.cwiseAbs().maxCoeff();
  const double min_abs = report.eigenvalues.cwiseAbs().minCoeff();
  if (!es.is_ic) {
    report.condition_number =
        ConditionNumber::make_infinite("effects do not span the operator space");
  } else if (max_abs <= 0.0 || min_abs <= tol.rank_rel_tol * max_abs) {
    report.condition_number = ConditionNumber::make_infinite(
        "gram matrix is rank deficient (more outcomes than d^2)");
  } else {
    report.condition_number = ConditionNumber::make_finite(max_abs / min_abs);
  }
  return report;
}

int min_depth_bound(int m, int d) {
  require(m >= 2 && d >= 2, "min_depth_bound: m and d must be at least 2");
  int n = static_cast<int>(std::ceil(2.0 * std::log(static_cast<double>(d)) /
                                     std::log(static_cast<double>(m))));
  n = std::max(n, 1);

  // Exact integer check guards against float error in the logarithms.
  const auto reaches = [&](int depth) {
    if (depth < 0) {
      return false;
    }
    unsigned __int128 power = 1;
    const unsigned __int128 target =
        static_cast<unsigned __int128>(d) * static_cast<unsigned __int128>(d);
    for (int k = 0; k < depth; ++k) {
      power *= static_cast<unsigned __int128>(m);
      if (power >= target) {
        return true;
      }
    }
    return power >= target;
  };
  while (!reaches(n)) {
    ++n;
  }
  while (n > 1 && reaches(n - 1)) {
    --n;
  }
  return n;
}

IcSearchResult ic_search(const Instrument& instr, int max_depth, size_t leaf_cap,
                         const Tolerances& tol) {
  require(max_depth >= 1, "ic_search: max_depth must be at least 1");
  checked_leaf_count(instr.outcomes(), max_depth, leaf_cap);

  IcSearchResult result;
  const int full_rank = instr.dim() * instr.dim();
  std::vector<ComplexMatrix> level = {ComplexMatrix::Identity(instr.dim(), instr.dim())};
  for (int depth = 1; depth <= max_depth; ++depth) {
    level = extend_dual_chains(instr, level);
    const int rank = span_rank(level, tol.rank_rel_tol);
    result.rank_per_depth.push_back(rank);
    if (rank == full_rank && !result.first_ic_depth.has_value()) {
      result.first_ic_depth = depth;
    }
  }
  return result;
}

} // namespace seqtomo
