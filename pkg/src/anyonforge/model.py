"""Anyon model container, the built-in models, and model-file I/O."""

from __future__ import annotations

import cmath
import itertools
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import recoupling
from .qarith import DEFAULT_TOL, QContext, qint

PHI = (1 + math.sqrt(5)) / 2


class ModelError(ValueError):
    """Malformed or inconsistent model data."""


@dataclass
class AnyonModel:
    """Multiplicity-free anyon model with integer labels, 0 being the vacuum.

    ``f_table[(a, b, c, d, e, f)]`` is ``[F^{abc}_d]_{ef}``: the amplitude of
    the ``(a (bc)_f)_d`` state inside ``((ab)_e c)_d``.
    ``r_table[(a, b, c)]`` is the exchange phase ``R^{ab}_c``.
    """

    name: str
    labels: list[str]
    fusion: np.ndarray
    qdims: np.ndarray
    twists: np.ndarray
    f_table: dict[tuple[int, ...], complex]
    r_table: dict[tuple[int, int, int], complex]
    s_matrix: np.ndarray | None = None
    doubled_spins: list[int] | None = None
    level: int | None = None
    notes: dict = field(default_factory=dict)

    @property
    def rank(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        if isinstance(label, (int, np.integer)):
            if not 0 <= label < self.rank:
                raise ModelError(f"label index {label} out of range for {self.name}")
            return int(label)
        try:
            return self.labels.index(label)
        except ValueError:
            raise ModelError(f"unknown label {label!r} in model {self.name}") from None

    def N(self, a: int, b: int, c: int) -> int:
        return int(self.fusion[a, b, c])

    def dual(self, a: int) -> int:
        hits = [c for c in range(self.rank) if self.fusion[a, c, 0]]
        if len(hits) != 1:
            raise ModelError(f"label {self.labels[a]} has {len(hits)} duals")
        return hits[0]

    def F(self, a, b, c, d, e, f) -> complex:
        key = (a, b, c, d, e, f)
        try:
            return self.f_table[key]
        except KeyError:
            raise ModelError(f"missing F entry {key} in model {self.name}") from None

    def R(self, a, b, c) -> complex:
        try:
            return self.r_table[(a, b, c)]
        except KeyError:
            raise ModelError(f"missing R entry {(a, b, c)} in model {self.name}") from None

    def f_matrix(self, a, b, c, d) -> tuple[list[int], list[int], np.ndarray]:
        """Block ``F^{abc}_d`` with its row labels ``e`` and column labels ``f``."""
        rows = [e for e in range(self.rank) if self.fusion[a, b, e] and self.fusion[e, c, d]]
        cols = [f for f in range(self.rank) if self.fusion[b, c, f] and self.fusion[a, f, d]]
        mat = np.array([[self.F(a, b, c, d, e, f) for f in cols] for e in rows], dtype=complex)
        return rows, cols, mat.reshape(len(rows), len(cols))

    def relabeled(self, names: list[str], name: str | None = None) -> "AnyonModel":
        if len(names) != self.rank:
            raise ModelError("relabeling must keep the rank")
        return AnyonModel(
            name=name or self.name, labels=list(names), fusion=self.fusion.copy(),
            qdims=self.qdims.copy(), twists=self.twists.copy(), f_table=dict(self.f_table),
            r_table=dict(self.r_table),
            s_matrix=None if self.s_matrix is None else self.s_matrix.copy(),
            doubled_spins=self.doubled_spins, level=self.level, notes=dict(self.notes),
        )


def fusion_product(model: AnyonModel, a, b) -> set[int]:
    a, b = model.index(a), model.index(b)
    return {c for c in range(model.rank) if model.fusion[a, b, c]}


def total_qdim(model: AnyonModel) -> float:
    return float(math.sqrt(np.sum(np.asarray(model.qdims) ** 2)))


def admissible_f_keys(fusion: np.ndarray):
    """All ``(a, b, c, d, e, f)`` where both fusion trees exist, lexicographically."""
    n = fusion.shape[0]
    for a, b, c, d in itertools.product(range(n), repeat=4):
        rows = [e for e in range(n) if fusion[a, b, e] and fusion[e, c, d]]
        if not rows:
            continue
        cols = [f for f in range(n) if fusion[b, c, f] and fusion[a, f, d]]
        for e in rows:
            for f in cols:
                yield (a, b, c, d, e, f)


def admissible_r_keys(fusion: np.ndarray):
    n = fusion.shape[0]
    for a, b, c in itertools.product(range(n), repeat=3):
        if fusion[a, b, c]:
            yield (a, b, c)


# ---------------------------------------------------------------- SU(2)_k

def smatrix_su2k(ctx: QContext) -> np.ndarray:
    k = ctx.level
    idx = np.arange(k + 1)
    arg = np.outer(idx + 1, idx + 1) * math.pi / (k + 2)
    return math.sqrt(2 / (k + 2)) * np.sin(arg)


def build_su2k(k: int) -> AnyonModel:
    ctx = QContext(k)
    n = k + 1
    fusion = np.zeros((n, n, n), dtype=int)
    for a, b, c in itertools.product(range(n), repeat=3):
        if recoupling.triangle_admissible(recoupling.SpinTriple(a, b, c, k)):
            fusion[a, b, c] = 1
    f_table = {
        key: complex(recoupling.f_symbol(ctx, key[0], key[1], key[2], key[3], key[4], key[5]))
        for key in admissible_f_keys(fusion)
    }
    r_table = {key: recoupling.r_symbol(ctx, *key) for key in admissible_r_keys(fusion)}
    return AnyonModel(
        name=f"su2k:{k}",
        labels=[str(j) for j in range(n)],
        fusion=fusion,
        qdims=np.array([qint(ctx, j + 1) for j in range(n)]),
        twists=np.array([recoupling.twist(ctx, j) for j in range(n)]),
        f_table=f_table,
        r_table=r_table,
        s_matrix=smatrix_su2k(ctx).astype(complex),
        doubled_spins=list(range(n)),
        level=k,
    )


# ---------------------------------------------------------------- tabulated models

def _tabulated(name, labels, fusion_rules, qdims, twists, f_special, r_values, s_matrix):
    n = len(labels)
    fusion = np.zeros((n, n, n), dtype=int)
    for a, b, c in fusion_rules:
        fusion[a, b, c] = fusion[b, a, c] = 1
    f_table = {key: complex(f_special.get(key, 1.0)) for key in admissible_f_keys(fusion)}
    r_table = {}
    for key in admissible_r_keys(fusion):
        a, b, c = key
        if a == 0 or b == 0:
            r_table[key] = 1 + 0j
        else:
            r_table[key] = complex(r_values.get(key, r_values.get((b, a, c))))
    return AnyonModel(
        name=name, labels=labels, fusion=fusion, qdims=np.array(qdims, dtype=float),
        twists=np.array(twists, dtype=complex), f_table=f_table, r_table=r_table,
        s_matrix=np.array(s_matrix, dtype=complex),
    )


def _vacuum_rules(n):
    return [(0, a, a) for a in range(n)]


def fibonacci(r_convention: str = "category") -> AnyonModel:
    """Fibonacci anyons ``{1, tau}``.

    ``r_convention="category"`` gives ``R^{tt}_1 = e^{-4i pi/5}``,
    ``R^{tt}_t = e^{3i pi/5}`` (the values reproduced by SU(2)_3 on integer
    spins).  ``"tqc"`` gives the alternative pair ``e^{4i pi/5}``,
    ``-e^{3i pi/5}``.
    """
    T = 1
    inv = 1 / PHI
    isq = 1 / math.sqrt(PHI)
    f_special = {
        (T, T, T, T, 0, 0): inv, (T, T, T, T, 0, T): isq,
        (T, T, T, T, T, 0): isq, (T, T, T, T, T, T): -inv,
    }
    if r_convention == "category":
        r = {(T, T, 0): cmath.exp(-4j * math.pi / 5), (T, T, T): cmath.exp(3j * math.pi / 5)}
    elif r_convention == "tqc":
        r = {(T, T, 0): cmath.exp(4j * math.pi / 5), (T, T, T): -cmath.exp(3j * math.pi / 5)}
    else:
        raise ModelError(f"unknown Fibonacci R convention {r_convention!r}")
    # unitary form; the listed variant with +1 in the corner is kept in notes
    s = np.array([[1, PHI], [PHI, -1]]) / math.sqrt(2 + PHI)
    name = "fibonacci" if r_convention == "category" else "fibonacci-tqc"
    m = _tabulated(
        name, ["1", "tau"], _vacuum_rules(2) + [(T, T, 0), (T, T, T)],
        [1.0, PHI], [1, cmath.exp(4j * math.pi / 5)], f_special, r, s,
    )
    m.notes["listed_s"] = np.array([[1, PHI], [PHI, 1]]) / math.sqrt(2 + PHI)
    return m


def ising() -> AnyonModel:
    S, P = 1, 2
    h = 1 / math.sqrt(2)
    f_special = {
        (S, S, S, S, 0, 0): h, (S, S, S, S, 0, P): h,
        (S, S, S, S, P, 0): h, (S, S, S, S, P, P): -h,
        (S, P, S, P, S, S): -1.0, (P, S, P, S, S, S): -1.0,
    }
    r = {
        (S, S, 0): cmath.exp(-1j * math.pi / 8), (S, S, P): cmath.exp(3j * math.pi / 8),
        (P, S, S): -1j, (P, P, 0): -1.0,
    }
    r2 = math.sqrt(2)
    s = np.array([[1, r2, 1], [r2, 0, -r2], [1, -r2, 1]]) / 2
    return _tabulated(
        "ising", ["1", "sigma", "psi"],
        _vacuum_rules(3) + [(S, S, 0), (S, S, P), (S, P, S), (P, P, 0)],
        [1.0, r2, 1.0], [1, cmath.exp(1j * math.pi / 8), -1], f_special, r, s,
    )


METAPLECTIC_LABELS = ["1", "X", "Y", "X'", "Z"]


def metaplectic() -> AnyonModel:
    """SU(2)_4 with doubled spins 0..4 renamed ``1, X, Y, X', Z``.

    ``notes["listed_twists"]`` keeps an alternative twist list that disagrees
    with the level-4 formula at ``X'``; the model itself uses the formula.
    """
    m = build_su2k(4).relabeled(METAPLECTIC_LABELS, name="metaplectic")
    listed = [1, cmath.exp(1j * math.pi / 4), cmath.exp(2j * math.pi / 3),
              cmath.exp(1j * math.pi / 4), 1]
    m.notes["listed_twists"] = listed
    m.notes["twist_mismatch"] = [
        m.labels[i] for i in range(m.rank) if abs(listed[i] - m.twists[i]) > 1e-9
    ]
    return m


def vacuum_model() -> AnyonModel:
    return _tabulated("vacuum", ["1"], [(0, 0, 0)], [1.0], [1], {}, {}, [[1.0]])


_BUILTINS = {
    "fibonacci": fibonacci,
    "fibonacci-tqc": lambda: fibonacci("tqc"),
    "ising": ising,
    "metaplectic": metaplectic,
    "vacuum": vacuum_model,
}


def builtin_model(name: str) -> AnyonModel:
    """Look up a model by name; ``su2k:K`` builds SU(2)_K."""
    key = name.strip().lower()
    if key.startswith("su2k:"):
        try:
            k = int(key.split(":", 1)[1])
        except ValueError:
            raise ModelError(f"bad level in {name!r}") from None
        if k < 1:
            raise ModelError("level must be >= 1")
        return build_su2k(k)
    if key not in _BUILTINS:
        raise ModelError(f"unknown model {name!r}; known: {sorted(_BUILTINS)} or su2k:K")
    return _BUILTINS[key]()


# ---------------------------------------------------------------- validation

def validate(model: AnyonModel, tol: float = DEFAULT_TOL) -> None:
    """Raise :class:`ModelError` naming the first invariant that fails."""
    N = model.fusion
    n = model.rank
    if N.shape != (n, n, n):
        raise ModelError(f"fusion: expected shape {(n, n, n)}, got {N.shape}")
    if N.min() < 0 or N.max() > 1:
        raise ModelError("fusion: multiplicities must be 0 or 1")
    if not np.array_equal(N, N.transpose(1, 0, 2)):
        raise ModelError("fusion: N[a][b][c] != N[b][a][c]")
    if not np.array_equal(N[0], np.eye(n, dtype=int)):
        raise ModelError("fusion: vacuum is not a unit")
    for a in range(n):
        if N[a, :, 0].sum() != 1:
            raise ModelError(f"fusion: label {model.labels[a]} lacks a unique dual")
    if abs(model.qdims[0] - 1) > tol or abs(model.twists[0] - 1) > tol:
        raise ModelError("qdims/twists: vacuum entries must be 1")
    lhs = np.outer(model.qdims, model.qdims)
    rhs = np.einsum("abc,c->ab", N, model.qdims)
    if np.max(np.abs(lhs - rhs)) > tol:
        raise ModelError("qdims: d_a d_b != sum_c N_ab^c d_c")
    want_f = set(admissible_f_keys(N))
    have_f = set(model.f_table)
    if want_f - have_f:
        raise ModelError(f"F: missing entry {min(want_f - have_f)}")
    if have_f - want_f:
        raise ModelError(f"F: entry {min(have_f - want_f)} is not admissible")
    want_r = set(admissible_r_keys(N))
    have_r = set(model.r_table)
    if want_r - have_r:
        raise ModelError(f"R: missing entry {min(want_r - have_r)}")
    if have_r - want_r:
        raise ModelError(f"R: entry {min(have_r - want_r)} is not admissible")
    if model.s_matrix is not None and model.s_matrix.shape != (n, n):
        raise ModelError("S: shape does not match the label count")


# ---------------------------------------------------------------- file I/O

def _cpx(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def to_dict(model: AnyonModel) -> dict:
    n = model.rank
    doc = {
        "name": model.name,
        "labels": list(model.labels),
        "fusion": [[a, b, c] for a, b, c in admissible_r_keys(model.fusion)],
        "qdims": [float(d) for d in model.qdims],
        "twists": [_cpx(t) for t in model.twists],
        "F": [
            dict(zip("abcdef", key), re=complex(v).real, im=complex(v).imag)
            for key, v in sorted(model.f_table.items())
        ],
        "R": [
            {"a": a, "b": b, "c": c, "re": complex(v).real, "im": complex(v).imag}
            for (a, b, c), v in sorted(model.r_table.items())
        ],
    }
    if model.s_matrix is not None:
        doc["S"] = [_cpx(model.s_matrix[i, j]) for i in range(n) for j in range(n)]
    return doc


def _need(doc: dict, key: str, kind):
    if key not in doc:
        raise ModelError(f"schema: missing field '{key}'")
    if not isinstance(doc[key], kind):
        raise ModelError(f"schema: field '{key}' has the wrong type")
    return doc[key]


def _pair(value, where: str) -> complex:
    if not (isinstance(value, list) and len(value) == 2 and all(isinstance(x, (int, float)) for x in value)):
        raise ModelError(f"schema: {where} must be a [re, im] pair")
    return complex(value[0], value[1])


def from_dict(doc: dict, tol: float = DEFAULT_TOL) -> AnyonModel:
    name = _need(doc, "name", str)
    labels = _need(doc, "labels", list)
    n = len(labels)
    if n == 0:
        raise ModelError("schema: 'labels' is empty")
    fusion = np.zeros((n, n, n), dtype=int)
    for i, trip in enumerate(_need(doc, "fusion", list)):
        if not (isinstance(trip, list) and len(trip) == 3 and all(isinstance(x, int) for x in trip)):
            raise ModelError(f"schema: fusion[{i}] must be an [a, b, c] triple")
        if not all(0 <= x < n for x in trip):
            raise ModelError(f"schema: fusion[{i}] has an index out of range")
        fusion[tuple(trip)] += 1
    if fusion.max() > 1:
        raise ModelError("fusion: multiplicity above 1 is not supported")
    qdims = _need(doc, "qdims", list)
    twists = [_pair(t, f"twists[{i}]") for i, t in enumerate(_need(doc, "twists", list))]
    if len(qdims) != n or len(twists) != n:
        raise ModelError("schema: qdims/twists length differs from labels")
    f_table = {}
    for i, rec in enumerate(_need(doc, "F", list)):
        try:
            key = tuple(int(rec[x]) for x in "abcdef")
            f_table[key] = complex(rec["re"], rec["im"])
        except (KeyError, TypeError):
            raise ModelError(f"schema: F[{i}] needs fields a,b,c,d,e,f,re,im") from None
    r_table = {}
    for i, rec in enumerate(_need(doc, "R", list)):
        try:
            r_table[(int(rec["a"]), int(rec["b"]), int(rec["c"]))] = complex(rec["re"], rec["im"])
        except (KeyError, TypeError):
            raise ModelError(f"schema: R[{i}] needs fields a,b,c,re,im") from None
    s = None
    if "S" in doc:
        flat = [_pair(v, f"S[{i}]") for i, v in enumerate(doc["S"])]
        if len(flat) != n * n:
            raise ModelError("schema: S must have labels^2 entries")
        s = np.array(flat, dtype=complex).reshape(n, n)
    model = AnyonModel(
        name=name, labels=[str(x) for x in labels], fusion=fusion,
        qdims=np.array(qdims, dtype=float), twists=np.array(twists, dtype=complex),
        f_table=f_table, r_table=r_table, s_matrix=s,
    )
    if s is not None and np.max(np.abs(s.imag)) > tol:
        model.notes["verlinde"] = "complex S: the Verlinde check uses the unconjugated sum"
    validate(model, tol)
    return model


def save_model(model: AnyonModel, path) -> None:
    Path(path).write_text(json.dumps(to_dict(model), indent=1))


def load_model(path, tol: float = DEFAULT_TOL) -> AnyonModel:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ModelError(f"schema: not valid JSON ({exc})") from None
    if not isinstance(doc, dict):
        raise ModelError("schema: top level must be an object")
    return from_dict(doc, tol)


def models_equal(m1: AnyonModel, m2: AnyonModel, tol: float = DEFAULT_TOL) -> bool:
    if m1.name != m2.name or m1.labels != m2.labels:
        return False
    if not np.array_equal(m1.fusion, m2.fusion):
        return False
    if not (np.allclose(m1.qdims, m2.qdims, atol=tol) and np.allclose(m1.twists, m2.twists, atol=tol)):
        return False
    if m1.f_table.keys() != m2.f_table.keys() or m1.r_table.keys() != m2.r_table.keys():
        return False
    if any(abs(m1.f_table[k] - m2.f_table[k]) > tol for k in m1.f_table):
        return False
    if any(abs(m1.r_table[k] - m2.r_table[k]) > tol for k in m1.r_table):
        return False
    if (m1.s_matrix is None) != (m2.s_matrix is None):
        return False
    return m1.s_matrix is None or np.allclose(m1.s_matrix, m2.s_matrix, atol=tol)
