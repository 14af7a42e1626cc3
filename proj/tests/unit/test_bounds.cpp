#include <doctest.h>

#include <cmath>

#include "bcasc/bounds.hpp"
#include "bcasc/reference_data.hpp"

using namespace bcasc;

namespace {
// printed-table comparison: 4 decimals
bool matches_4dp(double value, double printed) {
  return std::abs(value - printed) < 5e-5;
}
}  // namespace

TEST_CASE("welch bound values and precondition") {
  CHECK(matches_4dp(welch_bound(4, 16), 0.4472));
  CHECK(welch_bound(3, 9) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(welch_bound(3, 4) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(welch_bound(4, 4), std::invalid_argument);
  CHECK_THROWS_AS(welch_bound(4, 3), std::invalid_argument);
}

TEST_CASE("mwbe existence limits") {
  CHECK(mwbe_possible(3, 9, Field::Complex));
  CHECK_FALSE(mwbe_possible(3, 10, Field::Complex));
  CHECK(mwbe_possible(3, 6, Field::Real));
  CHECK_FALSE(mwbe_possible(3, 7, Field::Real));
}

TEST_CASE("orthoplex bound and achievability range") {
  CHECK(orthoplex_bound(3) == doctest::Approx(0.5773502691896257).epsilon(1e-15));
  CHECK(orthoplex_bound(4) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(orthoplex_bound(1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(orthoplex_achievable_range(3, Field::Complex) ==
        std::pair<long, long>{9, 16});
  CHECK(orthoplex_achievable_range(3, Field::Real) ==
        std::pair<long, long>{6, 10});
}

TEST_CASE("levenshtein bound values and absent case") {
  CHECK(matches_4dp(*levenshtein_bound(4, 64, Field::Complex), 0.6000));
  CHECK(*levenshtein_bound(3, 13, Field::Complex) ==
        doctest::Approx(0.591607978309962).epsilon(1e-12));
  CHECK(matches_4dp(*levenshtein_bound(3, 16, Field::Complex), 0.6202));
  // negative numerator: 2M < N^2 + N
  CHECK_FALSE(levenshtein_bound(3, 4, Field::Complex).has_value());
  CHECK_FALSE(levenshtein_bound(4, 6, Field::Complex).has_value());
}

TEST_CASE("mukkavilli bound values, clamp, and N=1 error") {
  CHECK(matches_4dp(mukkavilli_bound(2, 8), 0.7500));
  CHECK(mukkavilli_bound(3, 39) ==
        doctest::Approx(1.0 - 2.0 / std::sqrt(39.0)).epsilon(1e-15));
  // at M = 2^(N-1) the raw value is exactly zero
  CHECK(mukkavilli_bound(4, 8) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(mukkavilli_bound(5, 2) == 0.0);  // clamped
  CHECK_THROWS_AS(mukkavilli_bound(1, 5), std::invalid_argument);
}

TEST_CASE("composite bound regimes") {
  const BoundSet a = composite_bound(3, 16);
  CHECK(a.regime == BoundRegime::OrthoplexRegime);
  CHECK(matches_4dp(a.composite, 0.6202));
  CHECK_FALSE(a.mwbe_possible);

  const BoundSet b = composite_bound(2, 8);
  CHECK(b.regime == BoundRegime::LargeM);
  CHECK(matches_4dp(b.composite, 0.7500));

  const BoundSet c = composite_bound(5, 16);
  CHECK(c.regime == BoundRegime::WelchRegime);
  CHECK(matches_4dp(c.composite, 0.3830));

  CHECK_THROWS_AS(composite_bound(3, 3), std::invalid_argument);
}

TEST_CASE("composite equals welch exactly on the regime boundary M = N^2") {
  for (int n = 2; n <= 8; ++n) {
    const BoundSet b = composite_bound(n, n * n);
    CHECK(b.regime == BoundRegime::WelchRegime);
    CHECK(b.composite == b.welch);
  }
}

TEST_CASE("composite dominates orthoplex throughout its regime") {
  for (int n = 2; n <= 8; ++n) {
    for (int m = n * n + 1; m <= 2 * (n * n - 1); ++m) {
      const BoundSet b = composite_bound(n, m);
      CHECK(b.regime == BoundRegime::OrthoplexRegime);
      CHECK(b.orthoplex >= 0.0);
      CHECK(b.composite >= b.orthoplex);
    }
  }
}

TEST_CASE("published composite-bound columns reproduce to 4 decimals") {
  for (const auto& row : reference::kTable1) {
    CHECK(matches_4dp(composite_bound(row.n, row.m).composite, row.composite));
  }
  for (const auto& row : reference::kTable2) {
    CHECK(matches_4dp(composite_bound(row.n, row.m).composite, row.composite));
  }
}

TEST_CASE("published N=3 lower-bound curve reproduces to 1e-9") {
  for (size_t i = 0; i < reference::kFig2LowerBound.size(); ++i) {
    const int m = reference::kFig2MFirst + static_cast<int>(i);
    CHECK(std::abs(composite_bound(3, m).composite -
                   reference::kFig2LowerBound[i]) < 1e-9);
  }
}

TEST_CASE("real-field composition uses real thresholds and is flagged") {
  // N(N+1)/2 = 6 for N = 3: Welch regime up to M = 6
  CHECK(composite_bound(3, 6, Field::Real).regime == BoundRegime::WelchRegime);
  CHECK(composite_bound(3, 7, Field::Real).regime ==
        BoundRegime::OrthoplexRegime);
  // (N-1)(N+2) = 10: beyond is the large-M regime
  CHECK(composite_bound(3, 11, Field::Real).regime == BoundRegime::LargeM);
  CHECK(composite_bound(3, 7, Field::Real).extension);
  CHECK_FALSE(composite_bound(3, 16, Field::Complex).extension);
}
