#include "bcasc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bcasc {

double welch_bound(int n, int m) {
  if (n < 1) throw std::invalid_argument("Welch bound requires N >= 1");
  if (m <= n) throw std::invalid_argument("Welch bound stated for M > N");
  return std::sqrt(static_cast<double>(m - n) /
                   (static_cast<double>(n) * (m - 1)));
}

bool mwbe_possible(int n, int m, Field field) {
  if (m <= n) throw std::invalid_argument("MWBE condition stated for M > N");
  if (field == Field::Complex) return m <= n * n;
  return 2 * m <= n * (n + 1);
}

double orthoplex_bound(int n) {
  if (n < 1) throw std::invalid_argument("orthoplex bound requires N >= 1");
  return std::sqrt(1.0 / n);
}

std::pair<long, long> orthoplex_achievable_range(int n, Field field) {
  if (n < 1) throw std::invalid_argument("orthoplex bound requires N >= 1");
  const long nl = n;
  if (field == Field::Complex) return {nl * nl, 2 * (nl * nl - 1)};
  return {nl * (nl + 1) / 2, (nl - 1) * (nl + 2)};
}

std::optional<double> levenshtein_bound(int n, int m, Field field) {
  if (n < 1) throw std::invalid_argument("Levenshtein bound requires N >= 1");
  if (m <= n) throw std::invalid_argument("Levenshtein bound stated for M > N");
  double num, den;
  if (field == Field::Complex) {
    num = 2.0 * m - static_cast<double>(n) * n - n;
    den = static_cast<double>(n + 1) * (m - n);
  } else {
    num = 3.0 * m - static_cast<double>(n) * n - 2.0 * n;
    den = static_cast<double>(n + 2) * (m - n);
  }
  if (num < 0.0) return std::nullopt;
  return std::sqrt(num / den);
}

double mukkavilli_bound(int n, int m) {
  if (n < 2) {
    throw std::invalid_argument("Mukkavilli bound undefined for N < 2");
  }
  if (m < 1) throw std::invalid_argument("Mukkavilli bound requires M >= 1");
  const double value = 1.0 - 2.0 * std::pow(m, -1.0 / (n - 1));
  return std::max(0.0, value);
}

BoundSet composite_bound(int n, int m, Field field) {
  if (m <= n) throw std::invalid_argument("composite bound stated for M > N");

  BoundSet b;
  b.n = n;
  b.m = m;
  b.field = field;
  b.welch = welch_bound(n, m);
  b.orthoplex = orthoplex_bound(n);
  b.levenshtein = levenshtein_bound(n, m, field);
  b.mwbe_possible = mwbe_possible(n, m, field);
  b.extension = (field == Field::Real);

  const long t1 = (field == Field::Complex)
                      ? static_cast<long>(n) * n
                      : static_cast<long>(n) * (n + 1) / 2;
  const long t2 = orthoplex_achievable_range(n, field).second;

  if (m <= t1) {
    b.regime = BoundRegime::WelchRegime;
    b.mukkavilli = (n >= 2) ? mukkavilli_bound(n, m) : 0.0;
    b.composite = b.welch;
    return b;
  }

  b.mukkavilli = mukkavilli_bound(n, m);  // throws for n = 1
  const double lev = b.levenshtein.value_or(0.0);
  if (m <= t2) {
    b.regime = BoundRegime::OrthoplexRegime;
    b.composite = std::max({b.orthoplex, lev, b.mukkavilli});
  } else {
    b.regime = BoundRegime::LargeM;
    b.composite = std::max(lev, b.mukkavilli);
  }
  return b;
}

}  // namespace bcasc
