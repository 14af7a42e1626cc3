#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bcasc/spherical_code.hpp"

namespace bcasc {

/// A partition of the columns into M/N blocks of N mutually orthogonal
/// vectors, with statistics of the cross-block Gram moduli. is_mub is set
/// when every cross-block modulus lies within the detection tolerance of
/// 1/sqrt(N).
struct MubPartition {
  std::vector<std::vector<int>> blocks;
  double cross_min = 0.0;
  double cross_max = 0.0;
  double cross_mean = 0.0;
  bool is_mub = false;
};

struct FrameToleranceConfig {
  double wbe_tol = 1e-3;
  double mwbe_tol = 1e-3;
  double tight_tol = 1e-6;        // on the Frobenius tightness residual
  double equiangular_tol = 1e-3;  // on the off-diagonal modulus spread
  double mub_orth_tol = 1e-6;     // orthogonality edges
  double mub_cross_tol = 1e-3;    // distance to 1/sqrt(N)
};

struct FrameDiagnostics {
  double frame_potential = 0.0;
  double wbe_rms = 0.0;
  bool is_wbe = false;
  bool is_mwbe = false;
  bool is_tight = false;
  double tight_residual = 0.0;  // ||A A^H - (M/N) I||_F
  bool is_equiangular = false;
  double equiangle_spread = 0.0;  // max - min off-diagonal modulus
  std::optional<MubPartition> mub_partition;
};

/// sum_k sum_l |<s_k, s_l>|^2 over all pairs, diagonal included.
double frame_potential(const SphericalCode& code);

/// RMS off-diagonal Gram modulus against the Welch bound.
/// Returns (met within tol, rms). Requires M > N.
std::pair<bool, double> wbe_check(const SphericalCode& code, double tol);

/// Returns (equiangular within tol, spread). Requires M >= 2.
std::pair<bool, double> equiangularity(const SphericalCode& code, double tol);

/// Best-effort search for a partition into M/N orthonormal blocks
/// (backtracking over the near-orthogonality graph, capped at 10^4 states).
/// Absent when M is not divisible by N or no partition was found within the
/// cap; absence is not proof of absence.
std::optional<MubPartition> mub_detect(const SphericalCode& code,
                                       double orth_tol = 1e-6,
                                       double cross_tol = 1e-3);

FrameDiagnostics analyze_frame(const SphericalCode& code,
                               const FrameToleranceConfig& tol = {});

}  // namespace bcasc
