#pragma once

// Independent reference implementations used only to check the library:
// direct force summation with std::pow (valid for small nu), the
// finite-difference gradient of the generalized potential, and small exact
// fixtures. None of these share code with the implementation under test.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "bcasc/spherical_code.hpp"

namespace oracles {

// Direct evaluation of the K-point phase-sum force, nodes e^{i 2 pi j / K}
// for j = 0..K-1, summed l ascending then node ascending. Overflows for
// large nu; callers keep nu <= 32.
inline Eigen::MatrixXcd naive_phase_sum_unnormalized(
    const bcasc::SphericalCode& code, int nu, int k) {
  const int n = code.dim();
  const int m = code.size();
  const auto& a = code.entries();
  Eigen::MatrixXcd force = Eigen::MatrixXcd::Zero(n, m);
  for (int p = 0; p < m; ++p) {
    for (int l = 0; l < m; ++l) {
      if (l == p) continue;
      for (int j = 0; j < k; ++j) {
        const double angle = 2.0 * std::numbers::pi * j / k;
        const std::complex<double> phase(std::cos(angle), std::sin(angle));
        const Eigen::VectorXcd diff = a.col(p) - a.col(l) * phase;
        force.col(p) += diff / std::pow(diff.norm(), nu);
      }
    }
  }
  return force;
}

inline Eigen::MatrixXcd naive_phase_sum_directions(
    const bcasc::SphericalCode& code, int nu, int k) {
  Eigen::MatrixXcd force = naive_phase_sum_unnormalized(code, nu, k);
  for (int p = 0; p < force.cols(); ++p) force.col(p).normalize();
  return force;
}

// Generalized potential sum_{p<l} |s_p - s_l|^{-(nu-2)} on raw positions
// (no normalization applied, so it can be finite-differenced freely).
inline double potential(const Eigen::MatrixXcd& entries, int nu) {
  double g = 0.0;
  for (int p = 0; p < entries.cols(); ++p) {
    for (int l = p + 1; l < entries.cols(); ++l) {
      const double d = (entries.col(p) - entries.col(l)).norm();
      g += std::pow(d, -(nu - 2));
    }
  }
  return g;
}

// Central finite differences of the potential with respect to every real and
// imaginary coordinate, packed as d/dRe + i d/dIm.
inline Eigen::MatrixXcd fd_potential_gradient(const Eigen::MatrixXcd& entries,
                                              int nu, double h = 1e-6) {
  Eigen::MatrixXcd grad(entries.rows(), entries.cols());
  Eigen::MatrixXcd work = entries;
  for (int j = 0; j < entries.cols(); ++j) {
    for (int i = 0; i < entries.rows(); ++i) {
      const std::complex<double> orig = work(i, j);
      work(i, j) = orig + h;
      const double gp_re = potential(work, nu);
      work(i, j) = orig - h;
      const double gm_re = potential(work, nu);
      work(i, j) = orig + std::complex<double>(0.0, h);
      const double gp_im = potential(work, nu);
      work(i, j) = orig - std::complex<double>(0.0, h);
      const double gm_im = potential(work, nu);
      work(i, j) = orig;
      grad(i, j) = std::complex<double>((gp_re - gm_re) / (2.0 * h),
                                        (gp_im - gm_im) / (2.0 * h));
    }
  }
  return grad;
}

inline Eigen::MatrixXcd random_unitary(int n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      g(i, j) = std::complex<double>(normal(gen), normal(gen));
    }
  }
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

// Regular simplex in R^n: n+1 unit vectors with pairwise inner product -1/n
// (a real equiangular tight frame).
inline bcasc::SphericalCode simplex_etf(int n) {
  const int m = n + 1;
  Eigen::MatrixXd centered(m, m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      centered(i, j) = (i == j ? 1.0 : 0.0) - 1.0 / m;
    }
  }
  // orthonormal basis of the complement of the all-ones direction
  Eigen::MatrixXd ones(m, 1);
  ones.setOnes();
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(ones);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m, m);
  const Eigen::MatrixXd basis = q.rightCols(n);  // m x n
  Eigen::MatrixXcd coords = (basis.transpose() * centered).cast<std::complex<double>>();
  for (int j = 0; j < m; ++j) coords.col(j).normalize();
  return bcasc::SphericalCode(coords, bcasc::Field::Real);
}

// Three mutually unbiased bases of C^2 (standard, Fourier, circular).
inline bcasc::SphericalCode mub_c2() {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd a(2, 6);
  a.col(0) << 1.0, 0.0;
  a.col(1) << 0.0, 1.0;
  a.col(2) << r, r;
  a.col(3) << r, -r;
  a.col(4) << r, std::complex<double>(0.0, r);
  a.col(5) << r, std::complex<double>(0.0, -r);
  return bcasc::SphericalCode(a, bcasc::Field::Complex);
}

}  // namespace oracles
