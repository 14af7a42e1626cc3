#include <doctest.h>

#include <cmath>

#include "bcasc/bounds.hpp"
#include "bcasc/optimizer.hpp"
#include "oracles.hpp"

using namespace bcasc;

namespace {

OptimizerConfig quick_ksum_config(int k = 3) {
  OptimizerConfig cfg;
  cfg.nu_max = 16;
  cfg.i_max = 300;
  cfg.epsilon = 1e-8;
  cfg.force.mode = ForceMode::PhaseSum;
  cfg.force.k = k;
  return cfg;
}

}  // namespace

TEST_CASE("random seed codes are deterministic and unit norm") {
  const SphericalCode a = random_seed_code(3, 16, Field::Complex, 42);
  const SphericalCode b = random_seed_code(3, 16, Field::Complex, 42);
  CHECK((a.entries() - b.entries()).cwiseAbs().maxCoeff() == 0.0);
  for (int j = 0; j < a.size(); ++j) {
    CHECK(std::abs(a.entries().col(j).norm() - 1.0) < 1e-12);
  }
  const SphericalCode c = random_seed_code(3, 16, Field::Complex, 43);
  CHECK((a.entries() - c.entries()).cwiseAbs().maxCoeff() > 1e-3);

  const SphericalCode r = random_seed_code(4, 5, Field::Real, 42);
  CHECK(r.field() == Field::Real);
  CHECK((r.entries().imag().array() == 0.0).all());
}

TEST_CASE("seed entries have zero empirical mean across many seeds") {
  double sum = 0.0;
  long count = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    const SphericalCode code = random_seed_code(3, 16, Field::Complex, seed);
    sum += code.entries().real().sum();
    count += code.entries().size();
  }
  // normalized entries have Var(Re) ~ 1/(2n); 3 sigma of the mean
  const double sigma = std::sqrt(1.0 / 6.0) / std::sqrt(double(count));
  CHECK(std::abs(sum / count) < 3.0 * sigma);
}

TEST_CASE("step with zero damping returns the input bit for bit") {
  const SphericalCode code = random_seed_code(3, 5, Field::Complex, 5);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(5);
  ForceSpec fs{.mode = ForceMode::PhaseSum, .k = 4};
  const auto [next, field] = step(code, 4, zero, fs);
  CHECK((next.entries() - code.entries()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("orthonormal bases are fixed points of step for phase modes") {
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(3, 3);
  const Eigen::VectorXd alpha = Eigen::VectorXd::Constant(3, 0.4);
  const SphericalCode complex_basis(eye, Field::Complex);
  const SphericalCode real_basis(eye, Field::Real);

  for (ForceSpec fs : {ForceSpec{.mode = ForceMode::PhaseIntegral},
                       ForceSpec{.mode = ForceMode::PhaseSum, .k = 2},
                       ForceSpec{.mode = ForceMode::PhaseSum, .k = 7}}) {
    const auto [next, field] = step(complex_basis, 8, alpha, fs);
    CHECK(field.residuals.maxCoeff() < 1e-10);
    CHECK((next.entries() - eye).cwiseAbs().maxCoeff() < 1e-10);
  }
  const auto [next, field] =
      step(real_basis, 8, alpha, ForceSpec{.mode = ForceMode::RealAntipodal});
  CHECK(field.residuals.maxCoeff() < 1e-10);
  CHECK((next.entries() - eye).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("step output columns are unit norm") {
  const SphericalCode code = random_seed_code(4, 6, Field::Complex, 77);
  const Eigen::VectorXd alpha = Eigen::VectorXd::Constant(6, 0.9);
  const auto [next, field] =
      step(code, 4, alpha, ForceSpec{.mode = ForceMode::PhaseSum, .k = 3});
  for (int j = 0; j < next.size(); ++j) {
    CHECK(std::abs(next.entries().col(j).norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("damping grows under a stable pull and shrinks on reversal") {
  const SphericalCode code = random_seed_code(3, 4, Field::Complex, 3);
  const ForceField f = plain_forces(code, 4);
  const AccelConfig accel;
  const Eigen::VectorXd alpha = Eigen::VectorXd::Constant(4, 0.5);

  // identical consecutive fields: every point grows by exactly the factor
  Eigen::VectorXd grown = update_damping(f, f, alpha, accel, 0.1);
  for (int i = 0; i < 4; ++i) {
    CHECK(grown[i] == doctest::Approx(0.55).epsilon(1e-15));
  }
  // growth saturates at alpha_max
  Eigen::VectorXd high = Eigen::VectorXd::Constant(4, 0.89);
  CHECK(update_damping(f, f, high, accel, 0.1).maxCoeff() ==
        doctest::Approx(accel.alpha_max).epsilon(1e-15));

  // reversed pull: shrink, bounded below by the schedule value
  ForceField reversed = f;
  reversed.directions = -f.directions;
  reversed.pulls = reversed.directions - code.entries();
  for (int m = 0; m < 4; ++m) {
    reversed.residuals[m] = reversed.pulls.col(m).norm();
  }
  const Eigen::VectorXd shrunk =
      update_damping(f, reversed, alpha, accel, 0.1);
  for (int i = 0; i < 4; ++i) {
    CHECK(shrunk[i] == doctest::Approx(0.5 / 1.1).epsilon(1e-15));
  }
  const Eigen::VectorXd floored =
      update_damping(f, reversed, Eigen::VectorXd::Constant(4, 0.105), accel,
                     0.1);
  for (int i = 0; i < 4; ++i) CHECK(floored[i] == doctest::Approx(0.1));
}

TEST_CASE("run_schedule with acceleration off matches a plain reference loop") {
  OptimizerConfig cfg = quick_ksum_config();
  cfg.accel.enabled = false;
  const SphericalCode seed = random_seed_code(3, 5, Field::Complex, 19);
  const RunReport report = run_schedule(seed, cfg);

  // hand-rolled ladder, exactly the damped fixed-point loop
  SphericalCode code = seed;
  for (int nu = 2; nu <= 16; nu *= 2) {
    const double alpha = (nu == 2) ? cfg.alpha_init : cfg.alpha_init / (nu - 1);
    for (long i = 0; i < cfg.i_max; ++i) {
      const ForceField f = phase_sum_forces(code, nu, cfg.force.k);
      Eigen::MatrixXcd next = code.entries();
      for (int m = 0; m < code.size(); ++m) {
        next.col(m) += alpha * f.directions.col(m);
        next.col(m) /= next.col(m).norm();
      }
      code = SphericalCode(next, Field::Complex);
      if ((f.residuals.array() < cfg.epsilon).all()) break;
    }
  }
  CHECK((report.code.entries() - code.entries()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("identical configs give bit-identical runs") {
  OptimizerConfig cfg = quick_ksum_config();
  const SphericalCode seed = random_seed_code(3, 5, Field::Complex, 23);
  const RunReport a = run_schedule(seed, cfg);
  const RunReport b = run_schedule(seed, cfg);
  CHECK((a.code.entries() - b.code.entries()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.coherence == b.coherence);
}

TEST_CASE("the nu ladder doubles and honors the inclusive flag") {
  OptimizerConfig cfg = quick_ksum_config();
  cfg.i_max = 5;
  const SphericalCode seed = random_seed_code(2, 3, Field::Complex, 8);
  const RunReport incl = run_schedule(seed, cfg);
  REQUIRE(incl.converged_per_nu.size() == 4);
  int expected = 2;
  for (const auto& s : incl.converged_per_nu) {
    CHECK(s.nu == expected);
    expected *= 2;
  }
  cfg.include_nu_max = false;
  const RunReport excl = run_schedule(seed, cfg);
  CHECK(excl.converged_per_nu.size() == 3);
  CHECK(excl.converged_per_nu.back().nu == 8);
}

TEST_CASE("two orthonormal-capable points reach coherence zero") {
  OptimizerConfig cfg;
  cfg.runs = 1;
  const SphericalCode seed = random_seed_code(2, 2, Field::Complex, 7);
  const RunReport report = run_schedule(seed, cfg);
  CHECK(report.coherence < 1e-6);
  CHECK(report.coherence ==
        doctest::Approx(coherence(report.code).value).epsilon(1e-14));
}

TEST_CASE("fixed-point stages stay fixed under re-evaluation") {
  OptimizerConfig cfg;  // integral defaults; (3,4) meets its bound quickly
  const SphericalCode seed = random_seed_code(3, 4, Field::Complex, 11);
  const RunReport report = run_schedule(seed, cfg);
  REQUIRE(!report.converged_per_nu.empty());
  const StageStats last = report.converged_per_nu.back();
  REQUIRE(last.fixed_point_reached);
  const ForceField f = compute_forces(report.code, last.nu, cfg.force);
  CHECK(f.residuals.maxCoeff() < 10.0 * cfg.epsilon);
  CHECK(report.coherence <= coherence(seed).value);
}

TEST_CASE("coherence history is sampled on the documented stride") {
  OptimizerConfig cfg = quick_ksum_config();
  cfg.i_max = 250;
  const SphericalCode seed = random_seed_code(3, 5, Field::Complex, 2);
  const RunReport report = run_schedule(seed, cfg);
  REQUIRE(!report.coherence_history.empty());
  for (const auto& h : report.coherence_history) {
    const bool strided = h.iteration % 100 == 0;
    const bool stage_end = h.iteration == 250 ||
                           [&] {
                             for (const auto& s : report.converged_per_nu) {
                               if (s.nu == h.nu && s.iterations == h.iteration)
                                 return true;
                             }
                             return false;
                           }();
    CHECK((strided || stage_end));
  }
}

TEST_CASE("config invariants are validated") {
  OptimizerConfig cfg;
  cfg.alpha_init = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = OptimizerConfig{};
  cfg.nu_max = 24;  // not a power of two
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = OptimizerConfig{};
  cfg.nu_start = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = OptimizerConfig{};
  cfg.accel.growth = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = OptimizerConfig{};
  cfg.epsilon = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("real seeds reject phase force modes") {
  const SphericalCode seed = random_seed_code(3, 4, Field::Real, 31);
  OptimizerConfig cfg = quick_ksum_config();
  CHECK_THROWS_AS(run_schedule(seed, cfg), std::invalid_argument);
  cfg.force.mode = ForceMode::RealAntipodal;
  CHECK_NOTHROW(run_schedule(seed, cfg));
  const SphericalCode cseed = random_seed_code(3, 4, Field::Complex, 31);
  CHECK_THROWS_AS(run_schedule(cseed, cfg), std::invalid_argument);
}

TEST_CASE("collinear seeds are rejected") {
  Eigen::MatrixXcd m(2, 2);
  m.col(0) << 1.0, 0.0;
  m.col(1) << std::complex<double>(0, 1), 0.0;
  OptimizerConfig cfg = quick_ksum_config();
  CHECK_THROWS_AS(run_schedule(SphericalCode(m, Field::Complex), cfg),
                  std::invalid_argument);
}

TEST_CASE("multi_start returns ordered reports and the minimum") {
  OptimizerConfig cfg = quick_ksum_config(2);
  cfg.runs = 4;
  cfg.rng_seed = 9;
  const MultiStartResult result = multi_start(2, 4, Field::Complex, cfg);
  REQUIRE(result.all.size() == 4);
  CHECK(result.failures.empty());
  double mean = 0.0;
  for (const auto& run : result.all) mean += run.coherence;
  mean /= 4.0;
  CHECK(result.best.coherence <= mean);
  for (int i = 0; i < 4; ++i) {
    CHECK(result.all[i].run_index == i);
    CHECK(result.all[i].run_seed == derive_run_seed(9, i));
    CHECK(result.best.coherence <= result.all[i].coherence);
  }

  const MultiStartResult again = multi_start(2, 4, Field::Complex, cfg);
  CHECK((again.best.code.entries() - result.best.code.entries())
            .cwiseAbs()
            .maxCoeff() == 0.0);
}

TEST_CASE("multi_start with a single run returns that run") {
  OptimizerConfig cfg = quick_ksum_config(2);
  cfg.runs = 1;
  const MultiStartResult result = multi_start(2, 3, Field::Complex, cfg);
  CHECK(result.all.size() == 1);
  CHECK(result.best.coherence == result.all[0].coherence);
}

TEST_CASE("multi_start throws only when every run fails") {
  OptimizerConfig cfg = quick_ksum_config(2);
  cfg.force.mode = ForceMode::RealAntipodal;  // incompatible with Complex
  cfg.runs = 3;
  CHECK_THROWS_AS(multi_start(2, 4, Field::Complex, cfg), std::runtime_error);
}
