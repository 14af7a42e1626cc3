#pragma once

#include <optional>
#include <utility>

#include "bcasc/spherical_code.hpp"

namespace bcasc {

enum class BoundRegime { WelchRegime, OrthoplexRegime, LargeM };

/// All closed-form coherence lower bounds for a given (N, M, field), the
/// regime-wise composite value, and the MWBE existence condition.
///
/// The composite value is the maximum of the bounds that apply in the regime
/// M falls into:
///   M <= t1:        Welch
///   t1 < M <= t2:   max{orthoplex, Levenshtein, Mukkavilli}
///   M > t2:         max{Levenshtein, Mukkavilli}
/// with thresholds t1 = N^2, t2 = 2(N^2 - 1) for the complex field and
/// t1 = N(N+1)/2, t2 = (N-1)(N+2) for the real field. The real-field
/// composition is an extension by analogy (flagged via `extension`); only
/// the complex composition is backed by published results.
struct BoundSet {
  int n = 0;
  int m = 0;
  Field field = Field::Complex;
  double welch = 0.0;
  double orthoplex = 0.0;
  std::optional<double> levenshtein;  // absent when its numerator is negative
  double mukkavilli = 0.0;
  double composite = 0.0;
  BoundRegime regime = BoundRegime::WelchRegime;
  bool mwbe_possible = false;
  bool extension = false;  // true for the real-field composition
};

/// sqrt((M-N) / (N(M-1))). Throws std::invalid_argument unless M > N >= 1.
double welch_bound(int n, int m);

/// Necessary (not sufficient) condition for coherence to meet the Welch
/// bound with equality: M <= N^2 (complex) or M <= N(N+1)/2 (real).
/// Throws std::invalid_argument unless M > N.
bool mwbe_possible(int n, int m, Field field);

/// sqrt(1/N). Valid for any N >= 1; see orthoplex_achievable_range for the
/// cardinalities where equality is attainable.
double orthoplex_bound(int n);

/// Half-open achievability interval (lo, hi]: N^2 < M <= 2(N^2-1) for the
/// complex field, N(N+1)/2 < M <= (N-1)(N+2) for the real field.
std::pair<long, long> orthoplex_achievable_range(int n, Field field);

/// Complex: sqrt((2M - N^2 - N) / ((N+1)(M-N))).
/// Real:    sqrt((3M - N^2 - 2N) / ((N+2)(M-N))).
/// Returns nullopt when the numerator is negative (bound not applicable).
/// Throws std::invalid_argument unless M > N.
std::optional<double> levenshtein_bound(int n, int m, Field field);

/// 1 - 2 M^(-1/(N-1)), clamped below at 0.
/// Throws std::invalid_argument for N < 2 (exponent undefined).
double mukkavilli_bound(int n, int m);

/// Full bound set with the regime-wise composite value.
/// Throws std::invalid_argument unless M > N; constituent errors propagate.
BoundSet composite_bound(int n, int m, Field field = Field::Complex);

}  // namespace bcasc
