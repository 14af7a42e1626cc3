#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>

namespace bcasc {

enum class Field { Complex, Real };

/// M unit-norm codewords in C^N (or R^N), stored as the columns of an N x M
/// matrix. One representative per complex line; global per-column phases are
/// irrelevant for every quantity derived from the code.
///
/// Immutable after construction. The constructor accepts columns whose norm
/// deviates from 1 by at most 1e-6 (renormalizing anything worse than 1e-12)
/// and rejects everything else, so accumulated drift is repaired while
/// genuinely un-normalized input is an error. A Real-field code must have
/// exactly zero imaginary parts.
class SphericalCode {
 public:
  SphericalCode(Eigen::MatrixXcd entries, Field field);

  int dim() const { return static_cast<int>(entries_.rows()); }   // N
  int size() const { return static_cast<int>(entries_.cols()); }  // M
  Field field() const { return field_; }
  const Eigen::MatrixXcd& entries() const { return entries_; }

 private:
  Eigen::MatrixXcd entries_;
  Field field_;
};

/// Coherence of a code: the largest off-diagonal Gram modulus, together with
/// the pair attaining it (smallest (i, j) lexicographically on ties) and
/// summary statistics of the off-diagonal moduli.
struct CoherenceReport {
  double value = 0.0;
  std::pair<int, int> argmax_pair{0, 0};  // i < j
  double gram_offdiag_min = 0.0;
  double gram_offdiag_max = 0.0;
  double offdiag_rms = 0.0;  // RMS over ordered pairs k != l
};

/// Gram matrix G with G(i,j) = <s_i, s_j> = s_i^H s_j.
Eigen::MatrixXcd gram(const SphericalCode& code);

/// Throws std::invalid_argument for m < 2.
CoherenceReport coherence(const SphericalCode& code);

/// Minimum over pairs of the phase-minimized (chordal) distance
/// min_phi |s_p - s_q e^{i phi}| = sqrt(2 - 2|<s_p, s_q>|).
/// Throws std::invalid_argument for m < 2.
double min_line_distance(const SphericalCode& code);

/// Divides every column of `raw` by its norm and infers the field
/// (Real iff every imaginary part is exactly zero).
/// Throws std::invalid_argument on a zero column.
SphericalCode normalize_columns(const Eigen::MatrixXcd& raw);

}  // namespace bcasc
