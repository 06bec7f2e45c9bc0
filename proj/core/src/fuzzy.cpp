/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "cashsched/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cashsched {

namespace {

std::string describe(const Triangle& t)
{
  std::ostringstream os;
  os << "(" << t.lo << ", " << t.mid << ", " << t.hi << ")";
  return os.str();
}

}  // namespace

NivtfNumber NivtfNumber::make(const Triangle& lower, const Triangle& upper)
{
  auto fail = [&](const char* rule) {
    throw FuzzyError(std::string("invalid NIVTF lower=") + describe(lower) +
                     " upper=" + describe(upper) + ": violates " + rule);
  };
  const double values[] = {lower.lo, lower.mid, lower.hi, upper.lo, upper.mid, upper.hi};
  for (double v : values) {
    if (!std::isfinite(v)) { fail("finiteness"); }
  }
  if (!(upper.lo <= lower.lo)) { fail("upper.lo <= lower.lo"); }
  if (!(lower.lo <= lower.mid)) { fail("lower.lo <= lower.mid"); }
  if (!(lower.mid == upper.mid)) { fail("lower.mid == upper.mid"); }
  if (!(lower.mid <= lower.hi)) { fail("lower.mid <= lower.hi"); }
  if (!(lower.hi <= upper.hi)) { fail("lower.hi <= upper.hi"); }
  return NivtfNumber(lower, upper);
}

const char* to_string(MixClass c)
{
  switch (c) {
    case MixClass::geq_full: return "geq_full";
    case MixClass::leq_full: return "leq_full";
    case MixClass::geq_half: return "geq_half";
    case MixClass::leq_half: return "leq_half";
  }
  return "unknown";
}

double mix_coeff(const Triangle& t, double alpha, MixClass cls)
{
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in [0, 1], got " + std::to_string(alpha));
  }
  const auto [e1, e2] = expected_interval(t);
  // E1 + w (E2 - E1), clamped because w = 1 can overshoot E2 by an ulp.
  double w = 0.0;
  switch (cls) {
    case MixClass::geq_full: w = alpha; break;
    case MixClass::leq_full: w = 1.0 - alpha; break;
    case MixClass::geq_half: w = alpha / 2.0; break;
    case MixClass::leq_half: w = 1.0 - alpha / 2.0; break;
  }
  if (e1 == e2) { return e1; }
  return std::clamp(e1 + w * (e2 - e1), e1, e2);
}

}  // namespace cashsched
