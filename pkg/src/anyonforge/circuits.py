"""Qutrit circuits: ternary gate library, sparse state simulation, and the
built-in arithmetic circuits with their reference truth tables.

Wire 0 is the most significant trit.  All arithmetic is mod 3.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

OMEGA = np.exp(2j * np.pi / 3)

# 3x3 single-qutrit permutations and the Chrestenson gate
SINGLE_QUTRIT = {
    "+1": np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=complex),
    "+2": np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=complex),
    "01": np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1]], dtype=complex),
    "12": np.array([[1, 0, 0], [0, 0, 1], [0, 1, 0]], dtype=complex),
    "02": np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]], dtype=complex),
}
CH = np.array(
    [[1, 1, 1], [1, OMEGA, OMEGA.conjugate()], [1, OMEGA.conjugate(), OMEGA]]
) / np.sqrt(3)


class CircuitError(ValueError):
    pass


def _perm_matrix(n_wires: int, fn) -> np.ndarray:
    dim = 3**n_wires
    m = np.zeros((dim, dim), dtype=complex)
    for col, trits in enumerate(itertools.product(range(3), repeat=n_wires)):
        row = 0
        for t in fn(trits):
            row = 3 * row + t
        m[row, col] = 1
    return m


def sum_matrix(variant: int = 1) -> np.ndarray:
    """``|i, j> -> |i, j + variant * i>``; variant 1 is diag(I, X, X^2)."""
    if variant not in (1, 2):
        raise CircuitError("SUM variant must be 1 or 2")
    return _perm_matrix(2, lambda t: (t[0], (t[1] + variant * t[0]) % 3))


def controlled(u: np.ndarray, value: int) -> np.ndarray:
    """``C_c(U)``: apply ``u`` on the target block where the control equals ``value``."""
    if value not in (0, 1, 2):
        raise CircuitError(f"control value must be 0, 1 or 2, got {value}")
    d = u.shape[0]
    out = np.eye(3 * d, dtype=complex)
    out[value * d:(value + 1) * d, value * d:(value + 1) * d] = u
    return out


def gate_matrix(name: str, param=None, controls: tuple = ()) -> np.ndarray:
    """Dense unitary of a library gate.  ``controls`` is a tuple of control
    values, outermost first; the controlled wires precede the targets."""
    key = name.upper()
    if key == "Z3":
        p = str(param)
        if p not in SINGLE_QUTRIT:
            raise CircuitError(f"unknown Z3 parameter {param!r}")
        u = SINGLE_QUTRIT[p]
    elif key == "CH":
        u = CH
    elif key == "SUM":
        u = sum_matrix(int(param) if param is not None else 1)
    elif key == "SWAP":
        u = _perm_matrix(2, lambda t: (t[1], t[0]))
    elif key == "HORNER":
        u = _perm_matrix(3, lambda t: (t[0], t[1], (t[0] * t[1] + t[2]) % 3))
    else:
        raise CircuitError(f"unknown gate {name!r}")
    for c in reversed(controls):
        u = controlled(u, c)
    return u


def _arity(name: str) -> int:
    return {"Z3": 1, "CH": 1, "SUM": 2, "SWAP": 2, "HORNER": 3}.get(name.upper(), 0)


# ---------------------------------------------------------------- states

@dataclass
class QutritState:
    """Sparse amplitudes over basis tuples of ``n`` trits."""

    n: int
    amps: dict[tuple[int, ...], complex]

    @classmethod
    def basis(cls, trits) -> "QutritState":
        trits = tuple(int(t) for t in trits)
        if any(t not in (0, 1, 2) for t in trits):
            raise CircuitError(f"basis state {trits} is not ternary")
        return cls(len(trits), {trits: 1 + 0j})

    @classmethod
    def from_vector(cls, vec) -> "QutritState":
        vec = np.asarray(vec, dtype=complex)
        n = round(np.log(len(vec)) / np.log(3))
        if 3**n != len(vec):
            raise CircuitError("vector length is not a power of 3")
        amps = {}
        for idx, trits in enumerate(itertools.product(range(3), repeat=n)):
            if vec[idx] != 0:
                amps[trits] = complex(vec[idx])
        return cls(n, amps)

    @property
    def vector(self) -> np.ndarray:
        if self.n > 12:
            raise CircuitError("dense vector limited to 12 wires")
        vec = np.zeros(3**self.n, dtype=complex)
        for trits, a in self.amps.items():
            idx = 0
            for t in trits:
                idx = 3 * idx + t
            vec[idx] += a
        return vec

    def norm(self) -> float:
        return float(np.sqrt(sum(abs(a) ** 2 for a in self.amps.values())))

    def pruned(self, tol: float = 1e-14) -> "QutritState":
        return QutritState(self.n, {k: v for k, v in self.amps.items() if abs(v) > tol})

    def dominant(self) -> tuple[tuple[int, ...], complex]:
        return max(self.amps.items(), key=lambda kv: abs(kv[1]))

    def apply(self, u: np.ndarray, wires: tuple[int, ...]) -> "QutritState":
        new: dict[tuple[int, ...], complex] = {}
        for trits, amp in self.amps.items():
            col = 0
            for w in wires:
                col = 3 * col + trits[w]
            column = u[:, col]
            for row in np.flatnonzero(column):
                out = list(trits)
                r = int(row)
                for w in reversed(wires):
                    out[w] = r % 3
                    r //= 3
                key = tuple(out)
                new[key] = new.get(key, 0) + amp * column[row]
        return QutritState(self.n, new).pruned()


def measure_charge(state: QutritState, wire: int, subset) -> tuple[float, QutritState]:
    """Project ``wire`` onto the values in ``subset``; returns the outcome
    probability and the renormalised post-measurement state."""
    subset = set(subset)
    if not subset or not subset <= {0, 1, 2}:
        raise CircuitError("subset must be a nonempty subset of {0, 1, 2}")
    if not 0 <= wire < state.n:
        raise CircuitError(f"wire {wire} out of range")
    kept = {k: v for k, v in state.amps.items() if k[wire] in subset}
    prob = sum(abs(v) ** 2 for v in kept.values())
    if prob <= 1e-15:
        raise CircuitError("projection has zero probability; post-measurement state undefined")
    scale = 1 / np.sqrt(prob)
    return float(prob), QutritState(state.n, {k: v * scale for k, v in kept.items()})


# ---------------------------------------------------------------- circuits

@dataclass(frozen=True)
class Gate:
    name: str
    param: str | None
    targets: tuple[int, ...]
    controls: tuple[tuple[int, int], ...] = ()

    def __str__(self) -> str:
        s = f"GATE {self.name}"
        if self.param is not None:
            s += f" {self.param}"
        s += " ON " + " ".join(map(str, self.targets))
        if self.controls:
            s += " CTRL " + " ".join(f"{w}={v}" for w, v in self.controls)
        return s


@dataclass
class Circuit:
    n_wires: int
    gates: list[Gate] = field(default_factory=list)
    inputs: list[int] = field(default_factory=list)
    ancillas: dict[int, int] = field(default_factory=dict)
    outputs: list[int] = field(default_factory=list)
    name: str = "circuit"
    wire_names: dict[int, str] = field(default_factory=dict)
    output_names: list[str] | None = None

    @property
    def garbage(self) -> list[int]:
        return [w for w in range(self.n_wires) if w not in self.outputs]

    def check(self) -> None:
        n = self.n_wires
        for w in [*self.inputs, *self.ancillas, *self.outputs]:
            if not 0 <= w < n:
                raise CircuitError(f"wire {w} does not exist")
        if set(self.inputs) & set(self.ancillas):
            raise CircuitError("a wire cannot be both input and ancilla")
        if any(v not in (0, 1, 2) for v in self.ancillas.values()):
            raise CircuitError("ancilla initial values must be 0, 1 or 2")
        for g in self.gates:
            if _arity(g.name) != len(g.targets):
                raise CircuitError(f"{g}: wrong number of target wires")
            used = list(g.targets) + [w for w, _ in g.controls]
            if len(set(used)) != len(used):
                raise CircuitError(f"{g}: repeated wire")
            if any(not 0 <= w < n for w in used):
                raise CircuitError(f"{g}: wire out of range")
            if any(v not in (0, 1, 2) for _, v in g.controls):
                raise CircuitError(f"{g}: control value must be 0, 1 or 2")


def _gate_unitary(g: Gate, overrides=None) -> tuple[np.ndarray, tuple[int, ...]]:
    if overrides and (g.name.upper(), g.param) in overrides and not g.controls:
        return overrides[(g.name.upper(), g.param)], g.targets
    ctrl_vals = tuple(v for _, v in g.controls)
    wires = tuple(w for w, _ in g.controls) + g.targets
    if overrides and (g.name.upper(), g.param) in overrides:
        u = overrides[(g.name.upper(), g.param)]
        for c in reversed(ctrl_vals):
            u = controlled(u, c)
        return u, wires
    return gate_matrix(g.name, g.param, ctrl_vals), wires


def simulate(circuit: Circuit, assignment, overrides=None) -> QutritState:
    """Run ``circuit`` on the basis state given by ``assignment`` (a mapping
    wire -> value, or a sequence aligned with ``circuit.inputs``).

    ``overrides`` maps ``(NAME, param)`` to a replacement unitary, e.g. a
    braid-compiled SUM.
    """
    if not isinstance(assignment, dict):
        assignment = dict(zip(circuit.inputs, assignment, strict=True))
    if set(assignment) != set(circuit.inputs):
        raise CircuitError(f"assignment covers wires {sorted(assignment)}, inputs are {circuit.inputs}")
    trits = [0] * circuit.n_wires
    for w, v in {**circuit.ancillas, **assignment}.items():
        trits[w] = v
    state = QutritState.basis(trits)
    for g in circuit.gates:
        u, wires = _gate_unitary(g, overrides)
        state = state.apply(u, wires)
    return state


def truth_table(circuit: Circuit, inputs=None, overrides=None, tol: float = 1e-9):
    """List of ``(input tuple, output tuple)`` over all ternary inputs, or
    over the given input tuples."""
    if inputs is None:
        inputs = itertools.product(range(3), repeat=len(circuit.inputs))
    rows = []
    for inp in inputs:
        state = simulate(circuit, inp, overrides)
        trits, amp = state.dominant()
        if abs(abs(amp) - 1) > tol:
            raise CircuitError(f"input {tuple(inp)} does not map to a single basis state (|amp|={abs(amp):.6f})")
        rows.append((tuple(inp), tuple(trits[w] for w in circuit.outputs)))
    return rows


# ---------------------------------------------------------------- text format

def parse_circuit(text: str, name: str = "circuit") -> Circuit:
    n = None
    gates, inputs, ancillas, outputs = [], [], {}, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        head = head.upper()
        try:
            if head == "WIRES":
                n = int(rest[0])
            elif head == "IN":
                inputs += [int(x) for x in rest]
            elif head == "OUT":
                outputs += [int(x) for x in rest]
            elif head == "ANC":
                for tok in rest:
                    w, v = tok.split("=")
                    ancillas[int(w)] = int(v)
            elif head == "GATE":
                toks = list(rest)
                gname = toks.pop(0)
                up = [t.upper() for t in toks]
                on = up.index("ON")
                param = toks[0] if on == 1 else None
                if on > 1:
                    raise ValueError("too many gate parameters")
                ctrl_at = up.index("CTRL") if "CTRL" in up else len(toks)
                targets = tuple(int(x) for x in toks[on + 1:ctrl_at])
                controls = []
                for tok in toks[ctrl_at + 1:]:
                    w, v = tok.split("=")
                    controls.append((int(w), int(v)))
                gates.append(Gate(gname.upper(), param, targets, tuple(controls)))
            else:
                raise ValueError(f"unknown directive {head}")
        except (ValueError, IndexError) as exc:
            raise CircuitError(f"line {lineno}: {exc}") from None
    if n is None:
        raise CircuitError("missing WIRES line")
    c = Circuit(n, gates, inputs, ancillas, outputs or list(range(n)), name=name)
    c.check()
    return c


def format_circuit(c: Circuit) -> str:
    lines = [f"WIRES {c.n_wires}"]
    if c.inputs:
        lines.append("IN " + " ".join(map(str, c.inputs)))
    if c.ancillas:
        lines.append("ANC " + " ".join(f"{w}={v}" for w, v in sorted(c.ancillas.items())))
    lines.append("OUT " + " ".join(map(str, c.outputs)))
    lines += [str(g) for g in c.gates]
    return "\n".join(lines) + "\n"


def load_circuit(path) -> Circuit:
    p = Path(path)
    return parse_circuit(p.read_text(), name=p.stem)


# ---------------------------------------------------------------- built-in circuits

class _Builder:
    def __init__(self, names):
        self.names = list(names)
        self.gates: list[Gate] = []

    def w(self, name):
        return self.names.index(name)

    def add_const(self, target, value, **ctrl):
        # target += value, under hard controls
        if value % 3:
            self.gates.append(Gate("Z3", f"+{value % 3}", (self.w(target),), self._c(ctrl)))

    def perm(self, target, which, **ctrl):
        self.gates.append(Gate("Z3", which, (self.w(target),), self._c(ctrl)))

    def add_wire(self, target, source, times=1, **ctrl):
        # target += times * source
        self.gates.append(Gate("SUM", str(times), (self.w(source), self.w(target)), self._c(ctrl)))

    def swap(self, a, b):
        self.gates.append(Gate("SWAP", None, (self.w(a), self.w(b))))

    def _c(self, ctrl):
        return tuple((self.w(k), v) for k, v in ctrl.items())

    def circuit(self, name, inputs, ancillas, outputs, output_names=None):
        c = Circuit(
            len(self.names), self.gates, [self.w(x) for x in inputs],
            {self.w(k): v for k, v in ancillas.items()}, [self.w(x) for x in outputs],
            name=name, wire_names=dict(enumerate(self.names)), output_names=output_names,
        )
        c.check()
        return c


def _half_adder_ops(b, A, B, anc):
    b.add_wire(anc, B, **{A: 2})
    b.perm(anc, "12", **{B: 2})
    b.add_const(anc, 1, **{A: 1, B: 2})
    b.add_wire(A, B)


def _full_adder_ops(b, A, B, C, anc):
    _half_adder_ops(b, A, B, anc)
    b.add_wire(anc, C, **{A: 2})
    b.add_const(anc, 2, **{A: 2, C: 2})
    b.add_const(anc, 1, **{A: 1, C: 2})
    b.add_wire(A, C)


def _tppg_ops(b, A, B, P, cp):
    b.add_wire(P, B)
    b.perm(P, "12", **{A: 2})
    b.add_wire(P, B, 2, **{A: 0})
    b.add_const(cp, 1, **{A: 2, B: 2})


def _block1_ops(b, A, B, cin, anc):
    b.add_const(anc, 1, **{B: 2})
    b.add_const(anc, 1, **{A: 2, B: 1})
    b.perm(anc, "01", **{A: 0, B: 2})
    b.add_wire(A, B)
    b.add_wire(A, cin)
    b.add_const(anc, 1, **{A: 0, cin: 1})


def _block2_ops(b, A, B, cin, anc):
    b.add_const(anc, 1, **{A: 2, B: 1})
    b.add_wire(A, B)
    b.add_wire(A, cin)
    b.add_const(anc, 1, **{A: 0, cin: 1})


def _block3_ops(b, A, B, cin, anc):
    b.add_wire(A, B)
    b.add_wire(A, cin)
    b.add_const(anc, 1, **{A: 0, cin: 1})


def _block4_ops(b, A, cin, anc):
    b.add_const(anc, 1, **{A: 2, cin: 1})
    b.add_wire(A, cin)


def half_adder() -> Circuit:
    b = _Builder(["A", "B", "anc"])
    _half_adder_ops(b, "A", "B", "anc")
    return b.circuit("half_adder", ["A", "B"], {"anc": 0}, ["A", "anc"], ["S", "c_out"])


def full_adder() -> Circuit:
    b = _Builder(["A", "B", "C", "anc"])
    _full_adder_ops(b, "A", "B", "C", "anc")
    return b.circuit("full_adder", ["A", "B", "C"], {"anc": 0}, ["A", "anc"], ["S", "c_out"])


def half_subtractor() -> Circuit:
    b = _Builder(["A", "B", "anc"])
    b.add_wire("anc", "B", A=0)
    b.perm("anc", "12", B=2)
    b.add_const("anc", 1, A=1, B=2)
    b.add_wire("A", "B", 2)
    return b.circuit("half_subtractor", ["A", "B"], {"anc": 0}, ["A", "anc"], ["D", "b_out"])


def full_subtractor() -> Circuit:
    b = _Builder(["A", "B", "C", "anc"])
    b.add_const("anc", 1, B=2)
    b.add_const("anc", 1, A=0, B=1)
    b.add_const("anc", 2, A=2, B=2)
    b.add_wire("A", "B", 2)
    b.add_wire("A", "C", 2)
    b.add_const("anc", 1, A=2, C=2)
    b.add_const("anc", 1, A=2, C=1)
    b.add_const("anc", 1, A=1, C=2)
    return b.circuit("full_subtractor", ["A", "B", "C"], {"anc": 0}, ["A", "anc"], ["D", "b_out"])


def tppg() -> Circuit:
    b = _Builder(["A", "B", "P", "cp"])
    _tppg_ops(b, "A", "B", "P", "cp")
    return b.circuit("tppg", ["A", "B"], {"P": 0, "cp": 0}, ["P", "cp"], ["P", "cp"])


def block1() -> Circuit:
    b = _Builder(["A", "B", "cin", "anc"])
    _block1_ops(b, "A", "B", "cin", "anc")
    return b.circuit("block1", ["A", "B", "cin"], {"anc": 0}, ["A", "anc"], ["Sum", "c_out"])


def block2() -> Circuit:
    b = _Builder(["A", "B", "cin", "anc"])
    _block2_ops(b, "A", "B", "cin", "anc")
    return b.circuit("block2", ["A", "B", "cin"], {"anc": 0}, ["A", "anc"], ["Sum", "c_out"])


def block3() -> Circuit:
    b = _Builder(["A", "B", "cin", "anc"])
    _block3_ops(b, "A", "B", "cin", "anc")
    return b.circuit("block3", ["A", "B", "cin"], {"anc": 0}, ["A", "anc"], ["Sum", "c_out"])


def block4() -> Circuit:
    b = _Builder(["A", "cin", "anc"])
    _block4_ops(b, "A", "cin", "anc")
    return b.circuit("block4", ["A", "cin"], {"anc": 0}, ["A", "anc"], ["Sum", "c_out"])


def two_digit_adder() -> Circuit:
    """(A1 A0) + (B1 B0): half adder on the low digits, carry moved onto a
    fresh wire by SWAP, then a full adder on the high digits."""
    b = _Builder(["A1", "A0", "B1", "B0", "c0", "C", "c1"])
    _half_adder_ops(b, "A0", "B0", "c0")
    b.swap("c0", "C")
    _full_adder_ops(b, "A1", "B1", "C", "c1")
    return b.circuit(
        "two_digit_adder", ["A1", "A0", "B1", "B0"], {"c0": 0, "C": 0, "c1": 0},
        ["c1", "A1", "A0"], ["c_out", "S1", "S0"],
    )


def multiplier() -> Circuit:
    """(A1 A0) * (B1 B0) from four partial-product gates and adder blocks 1-4."""
    names = ["A1", "A0", "B1", "B0", "p00", "cp0", "p11", "cp3", "p10", "cp1",
             "p01", "cp2", "c0", "c1", "c2", "cout"]
    b = _Builder(names)
    _tppg_ops(b, "A0", "B0", "p00", "cp0")
    _tppg_ops(b, "A1", "B1", "p11", "cp3")
    _tppg_ops(b, "A1", "B0", "p10", "cp1")
    _tppg_ops(b, "A0", "B1", "p01", "cp2")
    _block1_ops(b, "p10", "p01", "cp0", "c0")    # P1 on p10, carry c0
    _block2_ops(b, "p11", "cp1", "cp2", "c1")    # partial sum on p11, carry c1
    _block4_ops(b, "p11", "c0", "c2")            # P2 on p11, carry c2
    _block3_ops(b, "cp3", "c1", "c2", "cout")    # P3 on cp3, carry out
    return b.circuit(
        "multiplier", ["A1", "A0", "B1", "B0"],
        {x: 0 for x in names[4:]},
        ["cout", "cp3", "p11", "p10", "p00"], ["c_out", "P3", "P2", "P1", "P0"],
    )


BUILTINS = {
    "half_adder": half_adder, "full_adder": full_adder,
    "half_subtractor": half_subtractor, "full_subtractor": full_subtractor,
    "tppg": tppg, "block1": block1, "block2": block2, "block3": block3, "block4": block4,
    "two_digit_adder": two_digit_adder, "multiplier": multiplier,
}

# block in which each multiplier output digit is produced
MULTIPLIER_STAGE = {"P0": "tppg(A0,B0)", "P1": "block1", "P2": "block4", "P3": "block3", "c_out": "block3"}


def builtin_circuit(name: str) -> Circuit:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise CircuitError(f"unknown circuit {name!r}; known: {sorted(BUILTINS)}") from None


# Reference truth tables, one string per row: input digits then output digits.
_REF = {
    "half_adder": (2, "0000 0110 0220 1010 1120 1201 2020 2101 2211"),
    "full_adder": (3, "00000 00110 00220 01010 01120 01201 02020 02101 02211 10010 10120 10201 "
                      "11020 11101 11211 12001 12111 12221 20020 20101 20211 21001 21111 21221 "
                      "22011 22121 22202"),
    "half_subtractor": (2, "0000 0121 0211 1010 1100 1221 2020 2110 2200"),
    "full_subtractor": (3, "00000 00121 00211 01021 01111 01201 02011 02101 02222 10010 10100 "
                           "10221 11000 11121 11211 12021 12111 12201 20020 20110 20200 21010 "
                           "21100 21221 22000 22121 22211"),
    "tppg": (2, "0000 1000 2000 0100 1110 2120 0200 1220 2211"),
    "block1": (3, "00000 10010 20020 01010 11020 21001 02020 12001 22011 00110 10120 20101 "
                  "01120 11101 21111 02101 12111 22121"),
    "block2": (3, "00000 10010 20020 01010 11020 21001 00110 10120 20101 01120 11101 21111"),
    "block3": (3, "00000 10010 01010 11020 00110 10120 01120 11101"),
    "block4": (2, "0000 1010 2020 0110 1120 2101"),
}


def reference_table(name: str) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """The reference truth table for a built-in component, in its listed row order."""
    if name not in _REF:
        raise CircuitError(f"no reference table for {name!r}")
    n_in, rows = _REF[name]
    out = []
    for row in rows.split():
        digits = tuple(int(ch) for ch in row)
        out.append((digits[:n_in], digits[n_in:]))
    return out


def compare_to_reference(name: str, overrides=None) -> tuple[int, int, list]:
    """Returns (matched rows, total rows, mismatches)."""
    ref = reference_table(name)
    got = dict(truth_table(builtin_circuit(name), [r[0] for r in ref], overrides))
    bad = [(inp, want, got[inp]) for inp, want in ref if got[inp] != want]
    return len(ref) - len(bad), len(ref), bad


def oracle_check(name: str, overrides=None) -> list[tuple]:
    """Compare the two-digit adder or multiplier against integer arithmetic
    on all 81 input pairs; returns the failing rows."""
    circ = builtin_circuit(name)
    bad = []
    for a1, a0, b1, b0 in itertools.product(range(3), repeat=4):
        A, B = 3 * a1 + a0, 3 * b1 + b0
        want_int = A + B if name == "two_digit_adder" else A * B
        width = len(circ.outputs)
        want = tuple((want_int // 3**k) % 3 for k in reversed(range(width)))
        (_, out), = truth_table(circ, [(a1, a0, b1, b0)], overrides)
        if out != want:
            stage = None
            if name == "multiplier":
                names = circ.output_names
                stage = [MULTIPLIER_STAGE[names[i]] for i in range(width) if out[i] != want[i]]
            bad.append(((A, B), want, out, stage))
    return bad
