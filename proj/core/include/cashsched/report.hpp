/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include "cashsched/financing.hpp"
#include "cashsched/project.hpp"

namespace cashsched {

/// Fixed three-decimal rendering without thousands separators.
std::string format_money(double v);

/// One header row "variable,Period 1,...", then one row per ledger line.
/// Throws std::runtime_error when the stream fails.
void write_ledger_csv(const Ledger& l, std::ostream& out);

/// Reads what write_ledger_csv wrote; issues are not carried.
Ledger parse_ledger_csv(std::string_view text);

struct GanttStyle {
  double day_width = 6.0;
  double row_height = 18.0;
  double label_width = 110.0;
};

/// SVG 1.1 Gantt chart: one bar per activity from x(start) to
/// x(completion) annotated with its 1-based mode, a vertical rule at each
/// period end, and a zero-width marker for dummy activities.
void render_gantt_svg(const Schedule& s, const Project& p, std::ostream& out, const GanttStyle& style = {});

}  // namespace cashsched
