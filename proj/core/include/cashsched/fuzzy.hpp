/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <stdexcept>
#include <string>

namespace cashsched {

/// Triangular fuzzy number (optimistic, modal, pessimistic).
struct Triangle {
  double lo = 0.0;
  double mid = 0.0;
  double hi = 0.0;

  static constexpr Triangle crisp(double v) { return {v, v, v}; }

  constexpr bool well_formed() const { return lo <= mid && mid <= hi; }
  constexpr bool is_crisp() const { return lo == mid && mid == hi; }

  friend constexpr bool operator==(const Triangle&, const Triangle&) = default;
};

class FuzzyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Normalized interval-valued triangular fuzzy number.
///
/// The lower triangle is nested in the upper one and both share the modal
/// point; heights are implicitly 1. A crisp value has all six abscissae
/// equal, a plain triangular number has lower == upper.
class NivtfNumber {
 public:
  NivtfNumber() = default;

  /// Validates upper.lo <= lower.lo <= lower.mid == upper.mid <= lower.hi <= upper.hi.
  static NivtfNumber make(const Triangle& lower, const Triangle& upper);
  static NivtfNumber crisp(double v) { return make(Triangle::crisp(v), Triangle::crisp(v)); }
  static NivtfNumber triangular(const Triangle& t) { return make(t, t); }

  const Triangle& lower() const { return lower_; }
  const Triangle& upper() const { return upper_; }
  double modal() const { return lower_.mid; }
  bool is_crisp() const { return lower_.is_crisp() && upper_.is_crisp(); }
  bool is_triangular() const { return lower_ == upper_; }

  friend bool operator==(const NivtfNumber&, const NivtfNumber&) = default;

 private:
  NivtfNumber(const Triangle& lower, const Triangle& upper) : lower_(lower), upper_(upper) {}

  Triangle lower_{};
  Triangle upper_{};
};

inline NivtfNumber make_nivtf(const Triangle& lower, const Triangle& upper)
{
  return NivtfNumber::make(lower, upper);
}

struct ExpectedInterval {
  double e1 = 0.0;
  double e2 = 0.0;
};

/// Expected interval [E1, E2] = [(lo+mid)/2, (mid+hi)/2].
constexpr ExpectedInterval expected_interval(const Triangle& t)
{
  return {(t.lo + t.mid) / 2.0, (t.mid + t.hi) / 2.0};
}

/// Expected value (lo + 2 mid + hi) / 4.
constexpr double expected_value(const Triangle& t) { return (t.lo + 2.0 * t.mid + t.hi) / 4.0; }

/// Coefficient mixes of the alpha-parametric crisp transform.
enum class MixClass {
  geq_full,  // alpha E2 + (1-alpha) E1
  leq_full,  // (1-alpha) E2 + alpha E1
  geq_half,  // (alpha/2) E2 + (1-alpha/2) E1
  leq_half,  // (1-alpha/2) E2 + (alpha/2) E1
};

const char* to_string(MixClass c);

/// Throws std::invalid_argument when alpha is outside [0, 1].
double mix_coeff(const Triangle& t, double alpha, MixClass cls);

}  // namespace cashsched
