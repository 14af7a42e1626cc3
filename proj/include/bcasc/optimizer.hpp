#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bcasc/forces.hpp"
#include "bcasc/spherical_code.hpp"

namespace bcasc {

/// Per-codeword adaptive damping: while the force direction on a point stays
/// stable (cosine of successive normalized forces >= direction_cos_min) its
/// step size grows by `growth` up to alpha_max; on a direction change it
/// shrinks by the same factor, never below the stage's schedule value.
struct AccelConfig {
  bool enabled = true;
  double growth = 1.1;
  double alpha_max = 0.9;
  double direction_cos_min = 0.98;
};

/// Full parameterization of the damped fixed-point search.
///
/// Stages run at nu = nu_start, 2 nu_start, ... doubling while nu < nu_max;
/// with include_nu_max (default) a final stage runs at nu_max itself. The
/// first stage uses damping alpha_init, every later stage nu uses
/// alpha_init / (nu - 1). A stage ends when all fixed-point residuals
/// |f_m - s_m| drop below epsilon or after i_max iterations.
struct OptimizerConfig {
  double alpha_init = 0.9;
  double epsilon = 1e-10;
  int nu_start = 2;
  int nu_max = 1 << 10;
  bool include_nu_max = true;
  long i_max = 100000;
  ForceSpec force;
  AccelConfig accel;
  std::uint64_t rng_seed = 1;
  int runs = 1;

  /// Throws std::invalid_argument on any violated invariant.
  void validate() const;
};

struct StageStats {
  int nu = 0;
  long iterations = 0;
  bool fixed_point_reached = false;
};

struct HistoryPoint {
  int nu = 0;
  long iteration = 0;
  double coherence = 0.0;
};

struct RunReport {
  SphericalCode code;
  double coherence = 0.0;
  std::vector<StageStats> converged_per_nu;
  std::vector<HistoryPoint> coherence_history;  // sampled every 100 iterations
  double wall_time_s = 0.0;
  OptimizerConfig config;  // per-run effective config (derived seed echoed)
  long quadrature_flags = 0;
  int run_index = 0;
  std::uint64_t run_seed = 0;
};

/// Column-normalized N x M code with real and imaginary parts drawn i.i.d.
/// standard normal (imaginary parts zero for the Real field). Deterministic
/// in rng_seed.
SphericalCode random_seed_code(int n, int m, Field field,
                               std::uint64_t rng_seed);

/// One damped move s_m <- normalize(s_m + alpha_m f_m), Jacobi style: all
/// forces come from the input snapshot. Returns the new code and the force
/// field that produced it. alpha_per_point must have length M; a zero entry
/// leaves that column bit-identical.
std::pair<SphericalCode, ForceField> step(const SphericalCode& code, int nu,
                                          const Eigen::VectorXd& alpha_per_point,
                                          const ForceSpec& force);

/// Adaptive damping update from two consecutive force fields; see
/// AccelConfig. schedule_alpha is the lower bound (the stage's value).
Eigen::VectorXd update_damping(const ForceField& prev_force,
                               const ForceField& curr_force,
                               const Eigen::VectorXd& alpha_per_point,
                               const AccelConfig& accel, double schedule_alpha);

/// The full search from one seed: the nu ladder with per-stage fixed-point
/// iteration. Requires coherence(seed) below the collinearity threshold and
/// a force mode compatible with the seed's field (a Real code admits only
/// RealAntipodal and Plain, which keep it exactly real).
RunReport run_schedule(const SphericalCode& seed, const OptimizerConfig& config);

struct MultiStartResult {
  RunReport best;  // minimum coherence; ties broken by lowest run index
  std::vector<RunReport> all;
  std::vector<std::string> failures;  // diagnostics of failed runs
};

/// config.runs independent seeds derived deterministically from
/// config.rng_seed by run index, optimized in parallel (capped by the
/// BCASC_THREADS environment variable when set). A failed run is recorded in
/// `failures`; throws std::runtime_error only if every run fails.
MultiStartResult multi_start(int n, int m, Field field,
                             const OptimizerConfig& config);

/// Seed for run `run_index` of a multi-start batch (splitmix64 stream).
std::uint64_t derive_run_seed(std::uint64_t base_seed, int run_index);

}  // namespace bcasc
