/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include <doctest.h>

#include <random>

#include "cashsched/fuzzy.hpp"

using namespace cashsched;

TEST_CASE("make_nivtf accepts nested triangles and degenerate forms")
{
  CHECK_NOTHROW(make_nivtf({7, 10, 12}, {6, 10, 13}));
  const NivtfNumber c = make_nivtf({5, 5, 5}, {5, 5, 5});
  CHECK(c.is_crisp());
  CHECK(c == NivtfNumber::crisp(5));
  CHECK(NivtfNumber::triangular({1, 2, 4}).is_triangular());
}

TEST_CASE("make_nivtf names the violated inequality")
{
  try {
    make_nivtf({7, 10, 12}, {8, 10, 13});
    FAIL("expected FuzzyError");
  } catch (const FuzzyError& e) {
    CHECK(std::string(e.what()).find("upper.lo <= lower.lo") != std::string::npos);
  }
  CHECK_THROWS_AS(make_nivtf({7, 10, 12}, {6, 11, 13}), FuzzyError);
  CHECK_THROWS_AS(make_nivtf({7, 10, 14}, {6, 10, 13}), FuzzyError);
  CHECK_THROWS_AS(make_nivtf({7, 6, 12}, {6, 6, 13}), FuzzyError);
}

TEST_CASE("expected interval and value")
{
  const auto a = expected_interval({5, 9, 13});
  CHECK(a.e1 == 7);
  CHECK(a.e2 == 11);
  const auto b = expected_interval({7, 10, 12});
  CHECK(b.e1 == 8.5);
  CHECK(b.e2 == 11);
  const auto c = expected_interval(Triangle::crisp(4));
  CHECK(c.e1 == 4);
  CHECK(c.e2 == 4);
  CHECK(expected_value({7, 10, 12}) == 9.75);
  CHECK(expected_value({8, 10, 12}) == 10);
  CHECK(expected_value(Triangle::crisp(3.5)) == 3.5);
}

TEST_CASE("mix coefficients")
{
  const Triangle t{7, 10, 12};
  CHECK(mix_coeff(t, 0.0, MixClass::geq_full) == 8.5);
  CHECK(mix_coeff(t, 1.0, MixClass::geq_full) == 11);
  CHECK(mix_coeff(t, 0.5, MixClass::leq_half) == doctest::Approx(10.375).epsilon(1e-15));
  CHECK(mix_coeff(t, 0.5, MixClass::geq_full) == doctest::Approx(9.75).epsilon(1e-15));
  // E1 = 3, E2 = 6.5 at alpha = 0.3
  const Triangle u{2, 4, 9};
  CHECK(mix_coeff(u, 0.3, MixClass::geq_full) == doctest::Approx(4.05));
  CHECK(mix_coeff(u, 0.3, MixClass::leq_full) == doctest::Approx(5.45));
  CHECK(mix_coeff(u, 0.3, MixClass::geq_half) == doctest::Approx(3.525));
  CHECK(mix_coeff(u, 0.3, MixClass::leq_half) == doctest::Approx(5.975));
  CHECK_THROWS_AS(mix_coeff(t, -0.1, MixClass::geq_full), std::invalid_argument);
  CHECK_THROWS_AS(mix_coeff(t, 1.5, MixClass::leq_full), std::invalid_argument);
}

TEST_CASE("mix coefficient properties on random triangles")
{
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  const MixClass classes[] = {MixClass::geq_full, MixClass::leq_full, MixClass::geq_half, MixClass::leq_half};
  for (int k = 0; k < 500; ++k) {
    double a = u(rng), b = u(rng), c = u(rng);
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    const Triangle t{a, b, c};
    const auto e = expected_interval(t);
    CHECK(expected_value(t) == doctest::Approx((e.e1 + e.e2) / 2));
    double prev_geq = -1e300, prev_leq = 1e300;
    for (int s = 0; s <= 10; ++s) {
      const double alpha = s / 10.0;
      for (MixClass cls : classes) {
        const double v = mix_coeff(t, alpha, cls);
        CHECK(v >= e.e1);
        CHECK(v <= e.e2);
      }
      const double g = mix_coeff(t, alpha, MixClass::geq_full);
      const double l = mix_coeff(t, alpha, MixClass::leq_full);
      CHECK(g >= prev_geq);
      CHECK(l <= prev_leq);
      prev_geq = g;
      prev_leq = l;
    }
    CHECK(mix_coeff(Triangle::crisp(b), (k % 11) / 10.0, MixClass::leq_half) == b);
  }
}

TEST_CASE("nested triangles have nested expected intervals")
{
  const NivtfNumber n = make_nivtf({7, 10, 12}, {6, 10, 13});
  const auto lo = expected_interval(n.lower());
  const auto up = expected_interval(n.upper());
  CHECK(up.e1 <= lo.e1);
  CHECK(lo.e2 <= up.e2);
}
