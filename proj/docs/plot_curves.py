# Copyright 2026 The cvcluster Authors
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
"""Plot normalized log-negativity curves produced by `cvcluster curve`.

    cvcluster curve --family canonical --rails 1 --out can1.csv
    cvcluster curve --family canonical --rails 100 --out can100.csv
    python docs/plot_curves.py can1.csv can100.csv -o curves.png
"""

import argparse
import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def read_curve(path):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return [float(r["r"]) for r in rows], [float(r["EN_normalized"]) for r in rows]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("csv", nargs="+", help="curve CSV files")
    ap.add_argument("-o", "--out", default="curves.png")
    args = ap.parse_args()

    fig, ax = plt.subplots(figsize=(5, 3.5))
    for path in args.csv:
        r, en = read_curve(path)
        ax.plot(r, en, label=Path(path).stem)
    ax.axhline(0.5, color="grey", lw=0.5, ls="--")
    ax.set_xlabel("r")
    ax.set_ylabel(r"$E_N / E_N(\infty)$")
    ax.set_ylim(0, 1)
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)


if __name__ == "__main__":
    main()
