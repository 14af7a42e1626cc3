#include "bcasc/spherical_code.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bcasc {

namespace {

constexpr double kNormKeepTol = 1e-12;   // accepted as-is
constexpr double kNormRepairTol = 1e-6;  // renormalized; worse is an error

}  // namespace

SphericalCode::SphericalCode(Eigen::MatrixXcd entries, Field field)
    : entries_(std::move(entries)), field_(field) {
  if (entries_.rows() < 1 || entries_.cols() < 1) {
    throw std::invalid_argument("spherical code requires n >= 1 and m >= 1");
  }
  if (!entries_.allFinite()) {
    throw std::invalid_argument("spherical code entries must be finite");
  }
  if (field_ == Field::Real && (entries_.imag().array() != 0.0).any()) {
    throw std::invalid_argument(
        "real-field code must have exactly zero imaginary parts");
  }
  for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
    const double norm = entries_.col(j).norm();
    const double dev = std::abs(norm - 1.0);
    if (dev <= kNormKeepTol) continue;
    if (dev <= kNormRepairTol) {
      entries_.col(j) /= norm;
    } else {
      throw std::invalid_argument("unit-norm violation at column " +
                                  std::to_string(j));
    }
  }
}

Eigen::MatrixXcd gram(const SphericalCode& code) {
  return code.entries().adjoint() * code.entries();
}

CoherenceReport coherence(const SphericalCode& code) {
  const int m = code.size();
  if (m < 2) {
    throw std::invalid_argument("coherence undefined for single vector");
  }
  const Eigen::MatrixXcd g = gram(code);
  CoherenceReport report;
  report.gram_offdiag_min = std::numeric_limits<double>::infinity();
  report.gram_offdiag_max = -1.0;
  double sum_sq = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const double a = std::abs(g(i, j));
      sum_sq += a * a;
      if (a < report.gram_offdiag_min) report.gram_offdiag_min = a;
      if (a > report.gram_offdiag_max) {
        report.gram_offdiag_max = a;
        report.argmax_pair = {i, j};
      }
    }
  }
  // RMS over ordered pairs equals RMS over unordered pairs (|G| is symmetric).
  report.offdiag_rms = std::sqrt(sum_sq / (0.5 * m * (m - 1)));
  report.value = report.gram_offdiag_max;
  return report;
}

double min_line_distance(const SphericalCode& code) {
  const int m = code.size();
  if (m < 2) {
    throw std::invalid_argument("line distance undefined for single vector");
  }
  const Eigen::MatrixXcd g = gram(code);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const double d = std::sqrt(std::max(0.0, 2.0 - 2.0 * std::abs(g(i, j))));
      best = std::min(best, d);
    }
  }
  return best;
}

SphericalCode normalize_columns(const Eigen::MatrixXcd& raw) {
  if (raw.rows() < 1 || raw.cols() < 1) {
    throw std::invalid_argument("spherical code requires n >= 1 and m >= 1");
  }
  if (!raw.allFinite()) {
    throw std::invalid_argument("spherical code entries must be finite");
  }
  Eigen::MatrixXcd out = raw;
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    const double norm = out.col(j).norm();
    if (!(norm > 1e-300)) {
      throw std::invalid_argument("degenerate seed column " + std::to_string(j));
    }
    out.col(j) /= norm;
  }
  const bool real = (out.imag().array() == 0.0).all();
  return SphericalCode(std::move(out), real ? Field::Real : Field::Complex);
}

}  // namespace bcasc
