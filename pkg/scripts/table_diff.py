#!/usr/bin/env python3
"""Compare the transcribed SU(2)_4 F/R listing with build_su2k(4).

For each mismatched F block the script also checks whether the listed block
is orthogonal, which separates transcription slips from convention changes.
"""

import sys
from collections import defaultdict
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from anyonforge.model import build_su2k  # noqa: E402
from su2k4_reference import BLOCKS, R_ENTRIES, listed_f_entries, parse_r  # noqa: E402


def main():
    m = build_su2k(4)
    per_block = defaultdict(list)
    for label, key, listed in listed_f_entries():
        block = label.split("[")[0]
        if key is None:
            per_block[block].append("listed with the wrong block size")
        elif abs(m.f_table[key] - listed) > 1e-10:
            per_block[block].append(f"{label}: listed {listed:+.6f} computed {m.f_table[key].real:+.6f}")
    orth = {}
    for names, block in BLOCKS:
        b = np.array(block)
        err = float(np.max(np.abs(b @ b.T - np.eye(len(b)))))
        for name in names.split():
            orth[name] = err
    for block, rows in sorted(per_block.items()):
        note = f" (listed block orthogonality error {orth[block]:.3f})" if block in orth else ""
        print(f"{block}{note}")
        for r in rows:
            print("   ", r)
    r_bad = [k for k, v in R_ENTRIES.items() if abs(m.r_table[parse_r(k)] - v) > 1e-10]
    print(f"R entries mismatched: {len(r_bad)} of {len(R_ENTRIES)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
