"""End-to-end acceptance checks.

Each test covers one criterion, prints a single ``PASS``/``FAIL`` line and
records it for the terminal summary.  Failures carry the list of offending
entries so a red line is self-explanatory.
"""

import itertools
import random
import time

import numpy as np
import pytest

from anyonforge.circuits import compare_to_reference, oracle_check, reference_table
from anyonforge.consistency import full_suite, suite_passes
from anyonforge.fusion import braid_generator, enumerate_basis, fusion_dimension
from anyonforge.gates import (
    TwoQutritSpace,
    compile_sum_swap,
    one_qutrit_compiled,
    two_qutrit_cz,
    zgate_identities,
)
from anyonforge.knots import BraidWord, close, jones, kauffman_bracket, rinv_as_jones
from anyonforge.laurent import LaurentPoly
from anyonforge.model import build_su2k, builtin_model
from anyonforge.qarith import QContext
from anyonforge.recoupling import wigner6j_classical, wigner6j_q
from conftest import ACCEPTANCE_LINES
from su2k4_reference import R_ENTRIES, listed_f_entries, parse_r


def _record(number, title, ok, elapsed, limit, detail=""):
    ok = ok and elapsed < limit
    budget = f" < {limit:g}s" if limit != float("inf") else ""
    line = f"{'PASS' if ok else 'FAIL'}  [{number}] {title}  ({elapsed:.2f}s{budget})"
    if detail:
        line += f"  {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    return ok


# 1 -----------------------------------------------------------------------

def test_1_su2k4_table():
    t0 = time.perf_counter()
    m = build_su2k(4)
    bad, n_f = [], 0
    for label, key, listed in listed_f_entries():
        n_f += 1
        if key is None:
            bad.append(f"{label}: listed as 1x1 but the block is larger")
        elif abs(m.f_table[key] - listed) > 1e-10:
            bad.append(f"{label}: listed {listed:+.6f}, computed {m.f_table[key].real:+.6f}")
    for label, listed in R_ENTRIES.items():
        got = m.r_table[parse_r(label)]
        if abs(got - listed) > 1e-10:
            bad.append(f"{label}: listed {listed:.6f}, computed {got:.6f}")
    # anchors
    assert abs(m.r_table[(1, 1, 0)] - np.exp(3j * np.pi / 4)) < 1e-10
    _, _, f222 = m.f_matrix(2, 2, 2, 2)
    anchor = np.array([[0.5, -1 / np.sqrt(2), 0.5], [-1 / np.sqrt(2), 0, 1 / np.sqrt(2)], [0.5, 1 / np.sqrt(2), 0.5]])
    assert np.max(np.abs(f222 - anchor)) < 1e-10
    elapsed = time.perf_counter() - t0
    detail = f"{n_f} F + {len(R_ENTRIES)} R entries, {len(bad)} mismatched"
    ok = _record(1, "SU(2)_4 table reproduction", not bad, elapsed, 1.0, detail)
    for b in bad:
        print("   ", b)
    assert ok, "mismatched entries:\n" + "\n".join(bad)


# 2 -----------------------------------------------------------------------

SUITE_MODELS = ["fibonacci", "ising", "metaplectic"] + [f"su2k:{k}" for k in range(1, 7)]


def test_2_consistency_suite():
    t0 = time.perf_counter()
    failing = []
    for name in SUITE_MODELS:
        reports = full_suite(builtin_model(name), tol=1e-9)
        if not suite_passes(reports):
            failing.append(name + ": " + ", ".join(r.name for r in reports if not r.passed))
    elapsed = time.perf_counter() - t0
    ok = _record(2, "consistency suite", not failing, elapsed, 30.0,
                 f"{len(SUITE_MODELS) - len(failing)}/{len(SUITE_MODELS)} models")
    assert ok, failing


# 3 -----------------------------------------------------------------------

def _random_admissible_6j(rng, max_spin=6):
    def tri(a, b, c):
        return (a + b + c) % 2 == 0 and abs(a - b) <= c <= a + b

    while True:
        j1, j2, j3, j = (rng.randint(0, max_spin) for _ in range(4))
        j12s = [x for x in range(max_spin + 1) if tri(j1, j2, x) and tri(x, j3, j)]
        j23s = [x for x in range(max_spin + 1) if tri(j2, j3, x) and tri(j1, x, j)]
        if j12s and j23s:
            return j1, j2, rng.choice(j12s), j3, j, rng.choice(j23s)


def test_3_classical_limit():
    t0 = time.perf_counter()
    rng = random.Random(20240601)
    ctx = QContext(2000)
    worst = 0.0
    for _ in range(50):
        args = _random_admissible_6j(rng)
        worst = max(worst, abs(wigner6j_q(ctx, *args) - wigner6j_classical(*args)))
    elapsed = time.perf_counter() - t0
    ok = _record(3, "q -> classical 6j limit (k=2000)", worst < 1e-3, elapsed, float("inf"),
                 f"max deviation {worst:.2e}")
    assert ok


# 4 -----------------------------------------------------------------------

def test_4_one_qutrit_gates():
    t0 = time.perf_counter()
    gates = one_qutrit_compiled() + zgate_identities(literal=True)
    bad = [f"{g.name}: deviation {g.deviation:.3e}" for g in gates if g.deviation >= 1e-9]
    elapsed = time.perf_counter() - t0
    ok = _record(4, "metaplectic one-qutrit gates", not bad, elapsed, float("inf"),
                 f"{len(gates) - len(bad)}/{len(gates)} identities")
    for b in bad:
        print("   ", b)
    assert ok, bad


# 5 -----------------------------------------------------------------------

def test_5_two_qutrit_synthesis():
    t0 = time.perf_counter()
    space = TwoQutritSpace()
    cz = two_qutrit_cz(space)
    sum1, swap = compile_sum_swap(space)
    bad = []
    for g in (cz, sum1, swap):
        if g.leakage >= 1e-10:
            bad.append(f"{g.name}: leakage {g.leakage:.3e}")
        if g.deviation >= 1e-9:
            bad.append(f"{g.name}: deviation {g.deviation:.3e}")
    elapsed = time.perf_counter() - t0
    ok = _record(5, "two-qutrit synthesis (CZ, SUM, SWAP)", not bad, elapsed, 120.0,
                 f"leakage {max(g.leakage for g in (cz, sum1, swap)):.1e}")
    assert ok, bad


# 6 -----------------------------------------------------------------------

TABLE_ROWS = {
    "half_adder": 9, "full_adder": 27, "half_subtractor": 9, "full_subtractor": 27, "tppg": 9,
    "block1": 18, "block2": 12, "block3": 8, "block4": 6,
}


def test_6_circuit_truth_tables():
    t0 = time.perf_counter()
    bad = []
    for name, rows in TABLE_ROWS.items():
        assert len(reference_table(name)) == rows
        matched, total, mism = compare_to_reference(name)
        if mism:
            bad.append(f"{name}: {matched}/{total}, first mismatch {mism[0]}")
    for name in ("two_digit_adder", "multiplier"):
        failures = oracle_check(name)
        if failures:
            bad.append(f"{name}: {81 - len(failures)}/81, first failure {failures[0]}")
    elapsed = time.perf_counter() - t0
    ok = _record(6, "circuit truth tables and integer oracles", not bad, elapsed, 10.0)
    assert ok, bad


# 7 -----------------------------------------------------------------------

def _corpus(max_strands=3, max_len=6):
    for n in range(1, max_strands + 1):
        letters = [g for i in range(1, n) for g in (i, -i)]
        for length in range(max_len + 1):
            if length and not letters:
                break
            for w in itertools.product(letters, repeat=length):
                yield BraidWord(n, w)


def _x(coeffs):
    return LaurentPoly(coeffs, "x")


def test_7_knot_invariants():
    t0 = time.perf_counter()
    bad = []
    one = _x({0: 1})
    if jones(BraidWord(1, ())) != one:
        bad.append("unknot")
    hopf = _x({1: -1, 5: -1})
    hopf_words = [w for w in ("s1^2", "s1^-2") if jones(BraidWord(2, (1, 1) if w == "s1^2" else (-1, -1))) == hopf]
    if len(hopf_words) != 1:
        bad.append(f"Hopf value matched by {hopf_words}")
    mirror = jones(BraidWord(2, (-1, -1)))
    if mirror != _x({-1: -1, -5: -1}):
        bad.append("Hopf mirror")
    if jones(BraidWord(2, ())) != _x({-1: -1, 1: -1}):
        bad.append("two unlinked circles")
    kink = kauffman_bracket(close(BraidWord(2, (1,))))
    if kink != LaurentPoly({3: -1}, "A"):
        bad.append(f"kink bracket {kink}")

    xm2, x2, skein_rhs = _x({-2: 1}), _x({2: 1}), _x({1: 1, -1: -1})
    n_words = 0
    for w in _corpus():
        n_words += 1
        v = jones(w)
        if rinv_as_jones(w) != v:
            bad.append(f"engines differ on {w}")
        if len(w.letters) < 6:
            for s in (1, -1):
                if jones(BraidWord(w.strands + 1, w.letters + (s * w.strands,))) != v:
                    bad.append(f"Markov fails on {w} ({s:+d})")
        if w.letters and w.strands > 1:
            rotated = BraidWord(w.strands, w.letters[1:] + w.letters[:1])
            if jones(rotated) != v:
                bad.append(f"conjugation fails on {w}")
            i = abs(w.letters[0])
            rest = w.letters[1:]
            vp = jones(BraidWord(w.strands, (i,) + rest))
            vm = jones(BraidWord(w.strands, (-i,) + rest))
            v0 = jones(BraidWord(w.strands, rest))
            if xm2 * vp - x2 * vm != skein_rhs * v0:
                bad.append(f"skein fails on {w}")
    elapsed = time.perf_counter() - t0
    ok = _record(7, "knot invariants", not bad, elapsed, 60.0, f"{n_words} corpus words")
    assert ok, bad[:20]


# 8 -----------------------------------------------------------------------

BRAID_MATRIX = [
    ("fibonacci", "tau", 4, "1", "staircase"),
    ("fibonacci", "tau", 5, "tau", "staircase"),
    ("fibonacci", "tau", 6, "1", "staircase"),
    ("ising", "sigma", 4, "1", "staircase"),
    ("ising", "sigma", 5, "sigma", "staircase"),
    ("ising", "sigma", 6, "psi", "staircase"),
    ("metaplectic", "X", 4, "Y", "paired4"),
    ("metaplectic", "X", 4, "1", "staircase"),
    ("metaplectic", "X", 5, "X", "staircase"),
    ("metaplectic", "Y", 4, "Y", "staircase"),
    ("su2k:3", "1", 5, "1", "staircase"),
    ("su2k:4", "2", 4, "2", "staircase"),
    ("su2k:5", "1", 5, "3", "staircase"),
]


def test_8_fusion_spaces():
    t0 = time.perf_counter()
    bad = []
    fib = builtin_model("fibonacci")
    dims = {}
    for total in ("1", "tau"):
        seq = [fusion_dimension(fib, ("tau", n), total) for n in range(2, 13)]
        dims[total] = seq
        for i in range(2, len(seq)):
            if seq[i] != seq[i - 1] + seq[i - 2]:
                bad.append(f"Fibonacci recurrence fails at n={i + 2}, total {total}")
    if fusion_dimension(builtin_model("metaplectic"), ("X", 4), "Y") != 3:
        bad.append("metaplectic XXXX->Y is not 3-dimensional")

    worst = 0.0
    for name, label, n, total, shape in BRAID_MATRIX:
        b = enumerate_basis(builtin_model(name), (label, n), total, shape)
        g = [braid_generator(b, i) for i in range(1, n)]
        for i in range(n - 2):
            worst = max(worst, np.max(np.abs(g[i] @ g[i + 1] @ g[i] - g[i + 1] @ g[i] @ g[i + 1])))
        for i, j in itertools.combinations(range(n - 1), 2):
            if j - i >= 2:
                worst = max(worst, np.max(np.abs(g[i] @ g[j] - g[j] @ g[i])))
    if worst >= 1e-9:
        bad.append(f"braid relation residual {worst:.3e}")
    elapsed = time.perf_counter() - t0
    ok = _record(8, "fusion-space dimensions and braid relations", not bad, elapsed, float("inf"),
                 f"tau^n -> tau dims {dims['tau']}, braid residual {worst:.1e}")
    assert ok, bad
