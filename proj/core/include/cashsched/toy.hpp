/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>

#include "cashsched/project.hpp"

namespace cashsched {

/// Shape of the seeded random instances used for solver cross-checks.
struct ToyOptions {
  int min_activities = 2;
  int max_activities = 4;
  int max_modes = 2;
  int min_horizon = 10;
  int max_horizon = 15;
  int periods = 2;
  /// Symmetric fuzzy spreads on durations and usages.
  bool fuzzy = true;
};

/// Deterministic small project: a source and sink dummy around 2-4 real
/// activities with 1-2 modes, one renewable and one non-renewable resource.
Project random_toy(std::uint64_t seed, const ToyOptions& opt = {});

}  // namespace cashsched
