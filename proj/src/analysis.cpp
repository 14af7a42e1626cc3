#include "bcasc/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "bcasc/bounds.hpp"

namespace bcasc {

namespace {

constexpr long kPartitionStateCap = 10000;

// Backtracking partition of {0..m-1} into `block_count` cliques of size
// `block_size` in the adjacency graph. Vertex v only opens the first empty
// block, which removes block-permutation symmetry.
class PartitionSearch {
 public:
  PartitionSearch(const Eigen::MatrixXd& moduli, double orth_tol,
                  int block_size, int block_count)
      : moduli_(moduli),
        orth_tol_(orth_tol),
        block_size_(block_size),
        blocks_(block_count) {}

  bool run() { return place(0); }

  const std::vector<std::vector<int>>& blocks() const { return blocks_; }

 private:
  bool place(int v) {
    if (v == moduli_.rows()) return true;
    if (++states_ > kPartitionStateCap) return false;
    bool saw_empty = false;
    for (auto& block : blocks_) {
      if (block.empty()) {
        if (saw_empty) break;
        saw_empty = true;
      }
      if (static_cast<int>(block.size()) == block_size_) continue;
      bool fits = true;
      for (int u : block) {
        if (moduli_(u, v) >= orth_tol_) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      block.push_back(v);
      if (place(v + 1)) return true;
      block.pop_back();
      if (states_ > kPartitionStateCap) return false;
    }
    return false;
  }

  const Eigen::MatrixXd& moduli_;
  double orth_tol_;
  int block_size_;
  std::vector<std::vector<int>> blocks_;
  long states_ = 0;
};

}  // namespace

double frame_potential(const SphericalCode& code) {
  return gram(code).squaredNorm();
}

std::pair<bool, double> wbe_check(const SphericalCode& code, double tol) {
  if (code.size() <= code.dim()) {
    throw std::invalid_argument("WBE check stated for M > N");
  }
  const double rms = coherence(code).offdiag_rms;
  const double welch = welch_bound(code.dim(), code.size());
  return {std::abs(rms - welch) < tol, rms};
}

std::pair<bool, double> equiangularity(const SphericalCode& code, double tol) {
  const CoherenceReport report = coherence(code);  // throws for m < 2
  const double spread = report.gram_offdiag_max - report.gram_offdiag_min;
  return {spread < tol, spread};
}

std::optional<MubPartition> mub_detect(const SphericalCode& code,
                                       double orth_tol, double cross_tol) {
  const int n = code.dim();
  const int m = code.size();
  if (m % n != 0) return std::nullopt;
  const int block_count = m / n;

  const Eigen::MatrixXd moduli = gram(code).cwiseAbs();
  PartitionSearch search(moduli, orth_tol, n, block_count);
  if (!search.run()) return std::nullopt;

  MubPartition partition;
  partition.blocks = search.blocks();

  std::vector<int> block_of(m);
  for (int b = 0; b < block_count; ++b) {
    for (int v : partition.blocks[b]) block_of[v] = b;
  }
  const double target = std::sqrt(1.0 / n);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  long count = 0;
  bool all_near_target = true;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (block_of[i] == block_of[j]) continue;
      const double x = moduli(i, j);
      lo = std::min(lo, x);
      hi = std::max(hi, x);
      sum += x;
      ++count;
      if (std::abs(x - target) > cross_tol) all_near_target = false;
    }
  }
  if (count > 0) {
    partition.cross_min = lo;
    partition.cross_max = hi;
    partition.cross_mean = sum / count;
    partition.is_mub = all_near_target;
  } else {
    // single block: nothing to compare across
    partition.cross_min = partition.cross_max = partition.cross_mean = 0.0;
    partition.is_mub = false;
  }
  return partition;
}

FrameDiagnostics analyze_frame(const SphericalCode& code,
                               const FrameToleranceConfig& tol) {
  FrameDiagnostics diag;
  diag.frame_potential = frame_potential(code);

  const int n = code.dim();
  const int m = code.size();
  const auto& a = code.entries();

  const Eigen::MatrixXcd outer = a * a.adjoint();
  diag.tight_residual =
      (outer - (static_cast<double>(m) / n) *
                   Eigen::MatrixXcd::Identity(n, n))
          .norm();
  diag.is_tight = diag.tight_residual < tol.tight_tol;

  if (m >= 2) {
    const CoherenceReport report = coherence(code);
    diag.wbe_rms = report.offdiag_rms;
    diag.equiangle_spread = report.gram_offdiag_max - report.gram_offdiag_min;
    diag.is_equiangular = diag.equiangle_spread < tol.equiangular_tol;
    if (m > n) {
      const double welch = welch_bound(n, m);
      diag.is_wbe = std::abs(diag.wbe_rms - welch) < tol.wbe_tol;
      diag.is_mwbe = report.value - welch < tol.mwbe_tol;
    }
    diag.mub_partition = mub_detect(code, tol.mub_orth_tol, tol.mub_cross_tol);
  }
  return diag;
}

}  // namespace bcasc
