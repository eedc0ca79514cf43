#include "seqtomo/recon.hpp"

#include <cmath>
#include <stdexcept>

namespace seqtomo {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) {
    throw std::invalid_argument(msg);
  }
}

// splitmix64: counter-based stream, one independent stream per shot.
uint64_t splitmix64(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform01(uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

uint64_t shot_stream(uint64_t seed, uint64_t shot) {
  uint64_t s = seed;
  uint64_t mixed = splitmix64(s) ^ (shot * 0xda942042e4dd58b5ULL);
  return splitmix64(mixed);
}

} // namespace

RealVector TrajectoryBatch::frequencies() const {
  size_t leaves = 1;
  for (int k = 0; k < depth; ++k) {
    leaves *= static_cast<size_t>(outcomes);
  }
  RealVector freq = RealVector::Zero(static_cast<Eigen::Index>(leaves));
  for (const auto& [entries, count] : counts) {
    const MultiIndex idx(entries, outcomes);
    require(idx.depth() == depth, "TrajectoryBatch: count key has wrong depth");
    freq(static_cast<Eigen::Index>(idx.flat_index())) +=
        static_cast<double>(count) / static_cast<double>(total);
  }
  return freq;
}

TrajectoryBatch sample_trajectories(const Instrument& instr, int depth,
                                    const DensityOperator& rho, uint64_t shots,
                                    uint64_t seed, size_t leaf_cap) {
  require(shots >= 1, "sample_trajectories: shots must be at least 1");
  require(rho.dim() == instr.dim(), "sample_trajectories: state dimension mismatch");
  require(depth >= 1, "sample_trajectories: depth must be at least 1");
  size_t leaves = 1;
  for (int k = 0; k < depth; ++k) {
    leaves *= static_cast<size_t>(instr.outcomes());
    if (leaves > leaf_cap) {
      throw std::invalid_argument("sample_trajectories: leaf cap exceeded");
    }
  }

  TrajectoryBatch batch;
  batch.label = instr.label();
  batch.depth = depth;
  batch.outcomes = instr.outcomes();
  batch.seed = seed;
  batch.total = shots;

  const int m = instr.outcomes();
  // tr(I_j[w]) = tr(E_j w), so the per-branch probabilities only need the
  // single-use effects; the full map is applied once per step.
  std::vector<ComplexMatrix> effect_t(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j) {
    effect_t[static_cast<size_t>(j)] =
        instr.operation(j).apply_dual(ComplexMatrix::Identity(instr.dim(), instr.dim()))
            .transpose();
  }

  std::vector<double> branch(static_cast<size_t>(m));
  for (uint64_t shot = 0; shot < shots; ++shot) {
    uint64_t stream = shot_stream(seed, shot);
    ComplexMatrix weight = rho.matrix();
    std::vector<int> outcome_seq;
    outcome_seq.reserve(static_cast<size_t>(depth));
    for (int step = 0; step < depth; ++step) {
      double norm = 0.0;
      for (int j = 0; j < m; ++j) {
        const double t =
            effect_t[static_cast<size_t>(j)].cwiseProduct(weight).sum().real();
        branch[static_cast<size_t>(j)] = std::max(t, 0.0);
        norm += branch[static_cast<size_t>(j)];
      }
      if (norm <= 0.0) {
        throw std::runtime_error("sample_trajectories: all branches have zero "
                                 "probability; the instrument is broken");
      }
      const double u = uniform01(stream) * norm;
      double cumulative = 0.0;
      int picked = m - 1;
      for (int j = 0; j < m; ++j) {
        cumulative += branch[static_cast<size_t>(j)];
        if (u < cumulative) {
          picked = j;
          break;
        }
      }
      outcome_seq.push_back(picked + 1);
      weight = instr.operation(picked).apply(weight);
    }
    ++batch.counts[outcome_seq];
  }
  return batch;
}

ReconstructionResult reconstruct(const EffectSet& es, const RealVector& probabilities,
                                 bool project, const Tolerances& tol) {
  if (!es.is_ic) {
    throw std::invalid_argument("reconstruct: effect set is not informationally complete");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(es.effects.size());
  require(probabilities.size() == n,
          "reconstruct: expected " + std::to_string(n) + " probabilities");

  RealVector probs = probabilities;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    require(probs(i) >= -1e-12, "reconstruct: negative probability entry");
    probs(i) = std::max(probs(i), 0.0);
    sum += probs(i);
  }
  require(std::abs(sum - 1.0) <= 0.01, "reconstruct: probabilities sum to " +
                                           std::to_string(sum) + ", expected 1");

  const int d = es.dim;
  const Eigen::Index d2 = static_cast<Eigen::Index>(d) * d;

  // Rows are vec(E_x)^dag so that A vec(rho) = tr(E_x rho); the final row
  // carries the unit-trace constraint.
  ComplexMatrix a(n + 1, d2);
  ComplexVector b(n + 1);
  for (Eigen::Index x = 0; x < n; ++x) {
    a.row(x) = vec(es.effects[static_cast<size_t>(x)].matrix()).adjoint();
    b(x) = probs(x);
  }
  a.row(n) = vec(ComplexMatrix::Identity(d, d)).adjoint();
  b(n) = 1.0;

  const Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const ComplexVector x = svd.solve(b);
  ComplexMatrix raw(d, d);
  for (Eigen::Index col = 0; col < d; ++col) {
    raw.col(col) = x.segment(col * d, d);
  }

  ComplexMatrix est = 0.5 * (raw + raw.adjoint());
  if (project) {
    const EigenDecomposition ed = hermitian_eigen(est, 1e-6);
    RealVector clipped = ed.eigenvalues.cwiseMax(0.0);
    const double trace = clipped.sum();
    if (trace <= 0.0) {
      throw std::runtime_error("reconstruct: projected estimate has zero trace");
    }
    clipped /= trace;
    est = ed.eigenvectors * clipped.asDiagonal() * ed.eigenvectors.adjoint();
  } else {
    const complex_t trace = est.trace();
    if (std::abs(trace) <= 0.0) {
      throw std::runtime_error("reconstruct: raw estimate has zero trace");
    }
    est /= trace.real();
  }

  ReconstructionResult result{DensityOperator(est, tol), raw, 0.0, project};
  RealVector misfit(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    misfit(i) = (es.effects[static_cast<size_t>(i)].matrix() * est).trace().real() - probs(i);
  }
  result.residual = misfit.norm();
  return result;
}

double trace_distance(const DensityOperator& a, const DensityOperator& b) {
  require(a.dim() == b.dim(), "trace_distance: dimension mismatch");
  const EigenDecomposition ed = hermitian_eigen(a.matrix() - b.matrix());
  return 0.5 * ed.eigenvalues.cwiseAbs().sum();
}

} // namespace seqtomo
