#!/usr/bin/env python3
# Copyright 2026 The sqpat Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Runs the CLI and recomputes CSV columns with exact fractions.

Usage: check_csv.py <sqpat binary> <tests/data dir>
"""

import csv
import io
import math
import subprocess
import sys
from fractions import Fraction

COLUMNS = [
    "q", "n", "m", "pattern", "N_S", "main_term_num", "main_term_den",
    "abs_error", "ratio_halfpow", "ratio_gamma", "fitted_exponent",
    "bound_satisfied",
]


def run(binary, args, expect_exit=None):
    proc = subprocess.run([binary] + args + ["--csv", "-"],
                          capture_output=True, text=True, check=False)
    if expect_exit is not None and proc.returncode != expect_exit:
        raise SystemExit(f"{args}: exit {proc.returncode}\n{proc.stderr}")
    out = proc.stdout
    start = out.index("q,n,m,pattern")
    return list(csv.DictReader(io.StringIO(out[start:])))


def check_rows(rows, label, affine_main=False):
    if not rows:
        raise SystemExit(f"{label}: no rows")
    for row in rows:
        if list(row.keys()) != COLUMNS:
            raise SystemExit(f"{label}: header {list(row.keys())}")
        q, n, m = int(row["q"]), int(row["n"]), int(row["m"])
        count = int(row["N_S"])
        main = Fraction(int(row["main_term_num"]), int(row["main_term_den"]))
        if affine_main and main != Fraction(q**n, 2**m):
            raise SystemExit(f"{label}: main term {main} at q={q}")
        err = abs(count - main)
        if Fraction(row["abs_error"]) != err:
            raise SystemExit(
                f"{label}: abs_error {row['abs_error']} != {err} at q={q}")
        want = float(err) / q ** (n - 0.5)
        if not math.isclose(float(row["ratio_halfpow"]), want, rel_tol=1e-9,
                            abs_tol=1e-12):
            raise SystemExit(f"{label}: ratio_halfpow at q={q}")
        if row["bound_satisfied"] not in ("0", "1"):
            raise SystemExit(f"{label}: bound_satisfied {row['bound_satisfied']}")


def main():
    binary, data = sys.argv[1], sys.argv[2]
    cases = [
        (["count", "--system", f"{data}/affine_thm1.sys", "--pattern", "+-",
          "--tower", "1..5"], 0, True),
        (["count", "--system", f"{data}/product_three.sys", "--pattern",
          "+-+", "--ext", "1"], 0, True),
        (["count", "--system", f"{data}/conic_pair_transverse.sys",
          "--pattern", "--", "--tower", "1..3"], 0, False),
        (["verify", "thm2", "--system", f"{data}/conic_pair_transverse.sys",
          "--tower", "1..3"], 0, False),
        (["sweep", "--theorem", "cor1", "--system",
          f"{data}/conic_pair_transverse.sys", "--q-list", "5,9,13,25"], 0,
         False),
    ]
    for args, code, affine_main in cases:
        rows = run(binary, args, code)
        check_rows(rows, " ".join(args[:2]), affine_main)
        print(f"ok: {' '.join(args)} ({len(rows)} rows)")

    # Closed form for the product system over F_7: f_i = x_i for three of
    # four coordinates, so N_S = 3^3 * 7 for every pattern.
    rows = run(binary, ["count", "--system", f"{data}/product_three.sys",
                        "--pattern", "++-"], 0)
    if int(rows[0]["N_S"]) != 189:
        raise SystemExit(f"product count {rows[0]['N_S']} != 189")
    print("ok: product count")


if __name__ == "__main__":
    main()
