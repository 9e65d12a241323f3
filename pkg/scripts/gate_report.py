#!/usr/bin/env python3
"""Print every compiled metaplectic gate with its deviation from the target,
including both readings of the one-qutrit permutation identities."""

import argparse
import json

from anyonforge.gates import compile_sum_swap, one_qutrit_compiled, sum_by_h_conjugation, TwoQutritSpace, two_qutrit_cz, zgate_identities


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--json", action="store_true", help="dump full matrices as JSON")
    args = ap.parse_args()
    space = TwoQutritSpace()
    groups = {
        "one qutrit": one_qutrit_compiled(),
        "permutation identities (as listed)": zgate_identities(literal=True),
        "permutation identities (as realized)": zgate_identities(literal=False),
        "two qutrits": [two_qutrit_cz(space), *compile_sum_swap(space), *sum_by_h_conjugation(space).values()],
    }
    if args.json:
        print(json.dumps({k: [g.to_record() for g in v] for k, v in groups.items()}, indent=1))
        return
    for title, gates in groups.items():
        print(f"== {title}")
        for g in gates:
            flag = "ok " if max(g.deviation, g.leakage) < 1e-9 else "BAD"
            print(f"  {flag} {g.name:<45} dev={g.deviation:.2e} leak={g.leakage:.1e} braid length={len(g.word)}")


if __name__ == "__main__":
    main()
