#pragma once

#include <Eigen/Dense>

#include "bcasc/spherical_code.hpp"

namespace bcasc {

enum class ForceMode { Plain, PhaseSum, PhaseIntegral, RealAntipodal };

enum class QuadratureScheme { UniformTrapezoid };

/// Controls the adaptive evaluation of the phase integral. The trapezoid
/// rule on the 2*pi-periodic integrand (equivalently, the rectangle rule)
/// converges spectrally; node counts double from initial_nodes until two
/// successive normalized force directions differ by less than rel_tol, or
/// max_nodes is reached (which sets a warning flag instead of failing).
struct QuadratureSpec {
  QuadratureScheme scheme = QuadratureScheme::UniformTrapezoid;
  int initial_nodes = 64;
  int max_nodes = 65536;
  double rel_tol = 1e-10;
};

/// Effective repelling forces on every codeword, evaluated from one immutable
/// code snapshot.
///
/// `directions` holds the normalized forces (unit columns). `raw` holds the
/// unnormalized sums after per-codeword rescaling: the weights delta^{-nu}
/// overflow double precision for large nu, so each codeword's sum is computed
/// with weights (delta_min / delta)^nu in (0, 1]; the dropped common factor is
/// recorded in `log_scale`, i.e. the true unnormalized force on codeword m is
/// raw.col(m) * exp(log_scale[m]). The rescaling cannot change `directions`.
///
/// `pulls` holds the effective displacement directions f_m - s_m relative to
/// the evaluation snapshot; `residuals[m] = |pulls.col(m)|` is the
/// fixed-point residual, in [0, 2]. The pull is the quantity whose direction
/// stability drives the adaptive damping: near equilibrium the force itself
/// degenerates to s_m and carries no usable direction signal.
struct ForceField {
  Eigen::MatrixXcd directions;
  Eigen::MatrixXcd raw;
  Eigen::VectorXd log_scale;
  Eigen::MatrixXcd pulls;
  Eigen::VectorXd residuals;
  ForceMode mode = ForceMode::Plain;
  int k = 0;  // number of phase points for PhaseSum
  int quadrature_nonconverged = 0;  // codewords whose integral hit max_nodes

  bool quadrature_converged() const { return quadrature_nonconverged == 0; }
};

/// Which force to compute, bundled so optimizer code can carry one value.
struct ForceSpec {
  ForceMode mode = ForceMode::PhaseIntegral;
  int k = 22;                // used by PhaseSum
  QuadratureSpec quadrature; // used by PhaseIntegral
};

/// Spherical-code forces, no phase equivalence:
///   f_m ~ sum_{l != m} (s_m - s_l) / |s_m - s_l|^nu.
/// Throws std::runtime_error when two codewords coincide (|s_m - s_l| < 1e-14).
ForceField plain_forces(const SphericalCode& code, int nu);

/// Complex-antipodal forces with the phase circle approximated by K points
/// e^{i 2 pi k / K}:
///   f_m ~ sum_k sum_{l != m} (s_m - s_l e^{i 2 pi k/K}) / |...|^nu.
/// K = 1 reduces exactly to plain_forces. Throws std::runtime_error when two
/// codewords are collinear (|<s_p, s_q>| > 1 - 1e-12).
ForceField phase_sum_forces(const SphericalCode& code, int nu, int k);

/// Complex-antipodal forces with the full phase integral
///   f_m ~ int_0^{2pi} sum_{l != m} (s_m - s_l e^{i kappa}) / |...|^nu dkappa,
/// evaluated adaptively per codeword as described at QuadratureSpec.
/// Throws std::runtime_error when two codewords are collinear.
ForceField phase_integral_forces(const SphericalCode& code, int nu,
                                 const QuadratureSpec& quad = {});

/// Real special case: the only equivalent codeword is the antipode, so the
/// phase set is exactly {+1, -1}. Requires a Real-field code; the result has
/// exactly zero imaginary parts. Throws std::runtime_error on an equal or
/// antipodal pair.
ForceField real_antipodal_forces(const SphericalCode& code, int nu);

/// Dispatch on spec.mode.
ForceField compute_forces(const SphericalCode& code, int nu,
                          const ForceSpec& spec);

}  // namespace bcasc
