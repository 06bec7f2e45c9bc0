/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <iosfwd>
#include <string>

#include "cashsched/milp_model.hpp"

namespace cashsched {

/// Maps a name onto the LP-format identifier alphabet. Idempotent.
std::string sanitize_lp_name(const std::string& name);

/// Writes one objective of the model in CPLEX LP format. Other objectives
/// are listed as comments. Throws std::runtime_error when the stream fails.
void export_lp(const MilpModel& m, std::ostream& out, int objective = 0);

}  // namespace cashsched
