# SPDX-FileCopyrightText: Copyright (c) 2026 cashsched contributors
# SPDX-License-Identifier: Apache-2.0
"""Solves an exported LP file with HiGHS and compares the optimum with the
scalar objective of an embedded-solver summary."""

import json
import re
import sys

import highspy


def main(lp_path, summary_path, tolerance=1e-6):
    with open(lp_path, encoding="utf-8") as f:
        text = f.read()
    constant = 0.0
    m = re.search(r"^\\ objective constant (\S+) not included$", text, re.M)
    if m:
        constant = float(m.group(1))
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("mip_rel_gap", 0.0)
    h.setOptionValue("mip_abs_gap", 0.0)
    if h.readModel(lp_path) != highspy.HighsStatus.kOk:
        print(f"HiGHS could not read {lp_path}")
        return 1
    h.run()
    status = h.getModelStatus()
    if status != highspy.HighsModelStatus.kOptimal:
        print(f"HiGHS status {h.modelStatusToString(status)}")
        return 1
    external = h.getInfo().objective_function_value + constant
    with open(summary_path, encoding="utf-8") as f:
        embedded = json.load(f)["scalar"]
    scale = max(1.0, abs(embedded))
    print(f"external {external:.10g} embedded {embedded:.10g}")
    return 0 if abs(external - embedded) <= tolerance * scale else 1


if __name__ == "__main__":
    sys.exit(main(sys.argv[1], sys.argv[2]))
