#include "bcasc/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "bcasc/bounds.hpp"

namespace bcasc {

namespace {

constexpr double kCollinearModulus = 1.0 - 1e-12;
constexpr long kHistoryStride = 100;
constexpr double kBoundEarlyExitTol = 1e-12;

int thread_cap() {
  if (const char* env = std::getenv("BCASC_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

double stage_alpha(const OptimizerConfig& config, int nu) {
  return nu == config.nu_start ? config.alpha_init
                               : config.alpha_init / (nu - 1);
}

SphericalCode apply_forces(const SphericalCode& code,
                           const Eigen::VectorXd& alpha,
                           const ForceField& field) {
  Eigen::MatrixXcd next = code.entries();
  for (int m = 0; m < code.size(); ++m) {
    if (alpha[m] == 0.0) continue;  // exact identity at zero damping
    next.col(m) += alpha[m] * field.directions.col(m);
    next.col(m) /= next.col(m).norm();
  }
  return SphericalCode(std::move(next), code.field());
}

}  // namespace

void OptimizerConfig::validate() const {
  if (!(alpha_init > 0.0 && alpha_init < 1.0)) {
    throw std::invalid_argument("alpha_init must lie in (0, 1)");
  }
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (nu_start < 2) throw std::invalid_argument("nu_start must be >= 2");
  if (nu_max < nu_start || !std::has_single_bit(static_cast<unsigned>(nu_max))) {
    throw std::invalid_argument("nu_max must be a power of two >= nu_start");
  }
  if (i_max < 1) throw std::invalid_argument("i_max must be >= 1");
  if (runs < 1) throw std::invalid_argument("runs must be >= 1");
  if (force.mode == ForceMode::PhaseSum && force.k < 1) {
    throw std::invalid_argument("phase sum requires K >= 1");
  }
  if (accel.enabled) {
    if (!(accel.growth > 1.0)) {
      throw std::invalid_argument("accel growth must exceed 1");
    }
    if (!(accel.alpha_max >= alpha_init)) {
      throw std::invalid_argument("accel alpha_max must be >= alpha_init");
    }
  }
}

SphericalCode random_seed_code(int n, int m, Field field,
                               std::uint64_t rng_seed) {
  if (n < 1 || m < 1) {
    throw std::invalid_argument("seed code requires n >= 1 and m >= 1");
  }
  std::mt19937_64 gen(rng_seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd raw(n, m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) {
      const double re = normal(gen);
      const double im = field == Field::Complex ? normal(gen) : 0.0;
      raw(i, j) = std::complex<double>(re, im);
    }
    const double norm = raw.col(j).norm();
    if (!(norm > 1e-300)) {
      throw std::runtime_error("degenerate seed column " + std::to_string(j));
    }
    raw.col(j) /= norm;
  }
  return SphericalCode(std::move(raw), field);
}

std::pair<SphericalCode, ForceField> step(const SphericalCode& code, int nu,
                                          const Eigen::VectorXd& alpha_per_point,
                                          const ForceSpec& force) {
  if (alpha_per_point.size() != code.size()) {
    throw std::invalid_argument("alpha_per_point must have length M");
  }
  ForceField field = compute_forces(code, nu, force);
  SphericalCode next = apply_forces(code, alpha_per_point, field);
  return {std::move(next), std::move(field)};
}

Eigen::VectorXd update_damping(const ForceField& prev_force,
                               const ForceField& curr_force,
                               const Eigen::VectorXd& alpha_per_point,
                               const AccelConfig& accel,
                               double schedule_alpha) {
  const Eigen::Index m = alpha_per_point.size();
  if (prev_force.directions.cols() != m || curr_force.directions.cols() != m) {
    throw std::invalid_argument("force fields and alpha sizes disagree");
  }
  Eigen::VectorXd alpha = alpha_per_point;
  for (Eigen::Index i = 0; i < m; ++i) {
    // Stability of the pull f_m - s_m, not of the force itself: near a fixed
    // point every force degenerates to s_m, so the force cosine saturates at
    // 1 and would keep growing alpha straight into an overshoot cycle. The
    // pull direction flips when a point overshoots and stays put while it
    // travels, which is the signal the damping needs.
    const double np = prev_force.residuals[i];
    const double nc = curr_force.residuals[i];
    if (np < 1e-13 || nc < 1e-13) continue;  // at the residual floor
    const double cos_sim =
        prev_force.pulls.col(i).dot(curr_force.pulls.col(i)).real() /
        (np * nc);
    if (cos_sim >= accel.direction_cos_min) {
      alpha[i] = std::min(alpha[i] * accel.growth, accel.alpha_max);
    } else {
      alpha[i] = std::max(alpha[i] / accel.growth, schedule_alpha);
    }
  }
  return alpha;
}

RunReport run_schedule(const SphericalCode& seed,
                       const OptimizerConfig& config) {
  config.validate();
  if (seed.size() < 2) {
    throw std::invalid_argument("optimization requires m >= 2");
  }
  if (seed.field() == Field::Real) {
    if (config.force.mode == ForceMode::PhaseSum ||
        config.force.mode == ForceMode::PhaseIntegral) {
      throw std::invalid_argument(
          "phase forces are not closed under the real field; "
          "use RealAntipodal or Plain");
    }
  } else if (config.force.mode == ForceMode::RealAntipodal) {
    throw std::invalid_argument("real antipodal forces require a real code");
  }
  if (coherence(seed).value > kCollinearModulus) {
    throw std::invalid_argument("seed contains collinear codewords");
  }

  // Active composite bound, used only for the stage-skip shortcut on
  // exactly achievable instances.
  std::optional<double> bound;
  if (seed.size() > seed.dim()) {
    try {
      bound = composite_bound(seed.dim(), seed.size(), seed.field()).composite;
    } catch (const std::exception&) {
      bound.reset();
    }
  }

  const auto t_start = std::chrono::steady_clock::now();
  RunReport report{.code = seed, .config = config};
  SphericalCode code = seed;
  bool stop_ladder = false;

  auto run_stage = [&](int nu) {
    const double sched = stage_alpha(config, nu);
    Eigen::VectorXd alpha = Eigen::VectorXd::Constant(code.size(), sched);
    std::optional<ForceField> prev;
    StageStats stats{.nu = nu};
    for (long i = 0; i < config.i_max; ++i) {
      ForceField field = compute_forces(code, nu, config.force);
      report.quadrature_flags += field.quadrature_nonconverged;
      if (config.accel.enabled && prev) {
        alpha = update_damping(*prev, field, alpha, config.accel, sched);
      }
      code = apply_forces(code, alpha, field);
      stats.iterations = i + 1;
      if (i % kHistoryStride == 0) {
        report.coherence_history.push_back({nu, i, coherence(code).value});
      }
      if ((field.residuals.array() < config.epsilon).all()) {
        stats.fixed_point_reached = true;
        break;
      }
      prev = std::move(field);
    }
    const double mu = coherence(code).value;
    report.coherence_history.push_back({nu, stats.iterations, mu});
    report.converged_per_nu.push_back(stats);
    if (stats.fixed_point_reached && bound &&
        std::abs(mu - *bound) < kBoundEarlyExitTol) {
      stop_ladder = true;  // remaining stages cannot improve a met bound
    }
  };

  int nu = config.nu_start;
  while (nu < config.nu_max && !stop_ladder) {
    run_stage(nu);
    nu *= 2;
  }
  if (!stop_ladder && config.include_nu_max && nu == config.nu_max) {
    run_stage(nu);
  }

  report.code = code;
  report.coherence = coherence(code).value;
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return report;
}

std::uint64_t derive_run_seed(std::uint64_t base_seed, int run_index) {
  std::uint64_t z =
      base_seed + (static_cast<std::uint64_t>(run_index) + 1) *
                      0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

MultiStartResult multi_start(int n, int m, Field field,
                             const OptimizerConfig& config) {
  config.validate();
  if (n < 1 || m < 2) {
    throw std::invalid_argument("multi_start requires n >= 1 and m >= 2");
  }

  std::vector<std::optional<RunReport>> results(config.runs);
  std::vector<std::string> errors(config.runs);
  std::atomic<int> next{0};

  auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= config.runs) return;
      OptimizerConfig run_cfg = config;
      run_cfg.rng_seed = derive_run_seed(config.rng_seed, i);
      run_cfg.runs = 1;
      try {
        const SphericalCode seed =
            random_seed_code(n, m, field, run_cfg.rng_seed);
        RunReport rep = run_schedule(seed, run_cfg);
        rep.run_index = i;
        rep.run_seed = run_cfg.rng_seed;
        results[i] = std::move(rep);
      } catch (const std::exception& e) {
        errors[i] = "run " + std::to_string(i) + ": " + e.what();
      }
    }
  };

  const int workers = std::min(thread_cap(), config.runs);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<RunReport> all;
  std::vector<std::string> failures;
  all.reserve(config.runs);
  int best_index = -1;
  for (int i = 0; i < config.runs; ++i) {
    if (results[i]) {
      if (best_index < 0 ||
          results[i]->coherence < all[best_index].coherence) {
        best_index = static_cast<int>(all.size());
      }
      all.push_back(std::move(*results[i]));
    } else {
      failures.push_back(errors[i]);
    }
  }
  if (all.empty()) {
    std::string what = "all optimization runs failed";
    if (!failures.empty()) what += "; first: " + failures.front();
    throw std::runtime_error(what);
  }
  return MultiStartResult{.best = all[static_cast<size_t>(best_index)],
                          .all = std::move(all),
                          .failures = std::move(failures)};
}

}  // namespace bcasc
