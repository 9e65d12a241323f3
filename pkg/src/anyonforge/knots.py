"""Links from braid closures, the Kauffman bracket, the Jones polynomial, and
an independent R-matrix trace invariant.  All arithmetic is exact.

Jones polynomials are returned in ``x = t^(1/2)`` with integer exponents.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .laurent import LaurentPoly

MAX_CROSSINGS = 24
MAX_STRANDS = 12


class KnotError(ValueError):
    pass


class LimitError(KnotError):
    """A configured size limit was exceeded."""


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise KnotError("a braid needs at least one strand")
        object.__setattr__(self, "letters", tuple(int(g) for g in self.letters))
        for g in self.letters:
            if g == 0 or abs(g) > self.strands - 1:
                raise KnotError(f"letter {g} invalid for {self.strands} strands")

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-g for g in reversed(self.letters)))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if other.strands != self.strands:
            raise KnotError("strand counts differ")
        return BraidWord(self.strands, self.letters + other.letters)

    def __str__(self):
        body = " ".join(f"s{g}" if g > 0 else f"s{-g}^-1" for g in self.letters)
        return f"B{self.strands}: {body}".rstrip()


_LETTER = re.compile(r"^s(\d+)(?:\^(-?\d+))?$")


def parse_braid(text: str) -> BraidWord:
    """Parse ``B<n>: s1 s2^-1 s1^2 ...``."""
    m = re.match(r"^\s*B(\d+)\s*:(.*)$", text)
    if not m:
        raise KnotError(f"braid word must look like 'B<n>: s1 s2^-1', got {text!r}")
    n = int(m.group(1))
    letters = []
    for tok in m.group(2).replace(",", " ").split():
        lm = _LETTER.match(tok)
        if not lm:
            raise KnotError(f"bad braid letter {tok!r}")
        gen, power = int(lm.group(1)), int(lm.group(2) or 1)
        letters += [gen if power > 0 else -gen] * abs(power)
    return BraidWord(n, tuple(letters))


# ---------------------------------------------------------------- diagrams

@dataclass(frozen=True)
class Crossing:
    sign: int          # +1 for sigma_i, -1 for its inverse
    bl: int
    br: int
    tl: int
    tr: int


@dataclass
class LinkDiagram:
    """Segments ``seg(level, pos) = level * n + pos``; crossing ``l`` joins
    levels ``l`` and ``l + 1``.  ``joins`` are the arcs fixed in every
    smoothing (pass-through strands and the closure)."""

    strands: int
    crossings: list[Crossing]
    joins: list[tuple[int, int]]
    n_segments: int
    closure: str
    orientation: list[int] = field(default_factory=list)   # per crossing, product of strand directions

    def components(self) -> int:
        dsu = _DSU(self.n_segments)
        for a, b in self.joins:
            dsu.union(a, b)
        for c in self.crossings:
            dsu.union(c.bl, c.tr)
            dsu.union(c.br, c.tl)
        return dsu.count()


class _DSU:
    def __init__(self, n):
        self.parent = list(range(n))
        self.classes = n

    def find(self, a):
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb
            self.classes -= 1

    def count(self):
        return self.classes


def close(word: BraidWord, closure: str = "trace") -> LinkDiagram:
    n, m = word.strands, len(word.letters)
    if closure not in ("trace", "plat"):
        raise KnotError(f"unknown closure {closure!r}")
    if closure == "plat" and n % 2:
        raise KnotError("plat closure needs an even number of strands")

    def seg(level, pos):
        return level * n + pos

    crossings, joins = [], []
    ends = []   # endpoint pairings: (segment, end) with end 0 = bottom, 1 = top
    for lvl, g in enumerate(word.letters):
        p = abs(g) - 1
        x = Crossing(1 if g > 0 else -1, seg(lvl, p), seg(lvl, p + 1),
                     seg(lvl + 1, p), seg(lvl + 1, p + 1))
        crossings.append(x)
        ends += [((x.bl, 1), (x.tr, 0)), ((x.br, 1), (x.tl, 0))]
        for q in range(n):
            if q not in (p, p + 1):
                joins.append((seg(lvl, q), seg(lvl + 1, q)))
                ends.append(((seg(lvl, q), 1), (seg(lvl + 1, q), 0)))
    if closure == "trace":
        for q in range(n):
            joins.append((seg(m, q), seg(0, q)))
            ends.append(((seg(m, q), 1), (seg(0, q), 0)))
    else:
        for j in range(0, n, 2):
            joins += [(seg(0, j), seg(0, j + 1)), (seg(m, j), seg(m, j + 1))]
            ends += [((seg(0, j), 0), (seg(0, j + 1), 0)), ((seg(m, j), 1), (seg(m, j + 1), 1))]
    d = LinkDiagram(n, crossings, joins, (m + 1) * n, closure)
    d.orientation = _orient(d, ends)
    return d


def _orient(d: LinkDiagram, ends) -> list[int]:
    """Walk every component and return, per crossing, the product of the
    directions (+1 upward) of the two strands through it."""
    partner = {}
    for a, b in ends:
        partner[a] = b
        partner[b] = a
    direction = {}
    for start in range(d.n_segments):
        if start in direction:
            continue
        seg, entered = start, 0
        while seg not in direction:
            direction[seg] = 1 if entered == 0 else -1
            seg, entered = partner[(seg, 1 - entered)]
    return [direction[c.bl] * direction[c.br] for c in d.crossings]


def writhe(d: LinkDiagram) -> int:
    """Signed crossing count, with crossing signs from the traced orientation."""
    return sum(c.sign * o for c, o in zip(d.crossings, d.orientation))


# ---------------------------------------------------------------- Kauffman bracket

def kauffman_bracket(d: LinkDiagram, max_crossings: int = MAX_CROSSINGS) -> LaurentPoly:
    """State sum over smoothings with ``<O> = 1`` and loop value ``-A^2 - A^-2``."""
    c = len(d.crossings)
    if c > max_crossings:
        raise LimitError(f"{c} crossings exceeds the limit of {max_crossings}")
    base = _DSU(d.n_segments)
    for a, b in d.joins:
        base.union(a, b)
    roots = sorted({base.find(i) for i in range(d.n_segments)})
    rid = {r: i for i, r in enumerate(roots)}
    red = [rid[base.find(i)] for i in range(d.n_segments)]
    # per crossing: the pairs glued by the vertical and horizontal smoothings
    vert = [((red[x.bl], red[x.tl]), (red[x.br], red[x.tr])) for x in d.crossings]
    horiz = [((red[x.bl], red[x.br]), (red[x.tl], red[x.tr])) for x in d.crossings]
    counts: dict[tuple[int, int], int] = {}   # (A-exponent, loops) -> multiplicity
    for state in range(1 << c):
        dsu = _DSU(len(roots))
        a_exp = 0
        for k, x in enumerate(d.crossings):
            a_smooth = not (state >> k) & 1
            # the A-smoothing of sigma_i is vertical, of its inverse horizontal
            use_vertical = a_smooth == (x.sign > 0)
            for p, q in (vert[k] if use_vertical else horiz[k]):
                dsu.union(p, q)
            a_exp += 1 if a_smooth else -1
        key = (a_exp, dsu.count())
        counts[key] = counts.get(key, 0) + 1
    loop = LaurentPoly({2: -1, -2: -1})
    total = LaurentPoly()
    for (a_exp, loops), mult in counts.items():
        total = total + LaurentPoly.monomial(a_exp, mult) * loop ** (loops - 1)
    return total


def jones_from_bracket(bracket: LaurentPoly, w: int) -> LaurentPoly:
    """``V = (-A^3)^(-w) <L>`` re-expressed in ``x = t^(1/2) = A^-2``."""
    v_a = bracket * LaurentPoly.monomial(-3 * w, (-1) ** (w % 2))
    if any(e % 2 for e in v_a.coeffs):
        raise KnotError("odd A-exponent after writhe correction")
    return LaurentPoly({-e // 2: c for e, c in v_a.coeffs.items()}, "x")


def jones(word: BraidWord, closure: str = "trace", max_crossings: int = MAX_CROSSINGS) -> LaurentPoly:
    d = close(word, closure)
    return jones_from_bracket(kauffman_bracket(d, max_crossings), writhe(d))


# ---------------------------------------------------------------- R-matrix engine

def _x(coeffs):
    return LaurentPoly(coeffs, "x")


# rows/cols ordered 00, 01, 10, 11; entries as {exponent of x: coefficient}
R_MATRIX = [
    [_x({1: 1}), _x({}), _x({}), _x({})],
    [_x({}), _x({}), _x({2: 1}), _x({})],
    [_x({}), _x({2: 1}), _x({1: 1, 3: -1}), _x({})],
    [_x({}), _x({}), _x({}), _x({1: 1})],
]
R_INVERSE = [
    [_x({-1: 1}), _x({}), _x({}), _x({})],
    [_x({}), _x({-1: 1, -3: -1}), _x({-2: 1}), _x({})],
    [_x({}), _x({-2: 1}), _x({}), _x({})],
    [_x({}), _x({}), _x({}), _x({-1: 1})],
]
H_DIAG = [_x({-1: 1}), _x({1: 1})]


def matmul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = [[_x({}) for _ in range(m)] for _ in range(n)]
    for i in range(n):
        for j in range(m):
            acc = _x({})
            for t in range(k):
                if not a[i][t].is_zero() and not b[t][j].is_zero():
                    acc = acc + a[i][t] * b[t][j]
            out[i][j] = acc
    return out


def _apply_local(vec: dict, mat, p: int, n: int) -> dict:
    # vec maps bit-tuples to LaurentPoly; mat acts on factors p, p+1
    out: dict[tuple, LaurentPoly] = {}
    for bits, amp in vec.items():
        col = 2 * bits[p] + bits[p + 1]
        for row in range(4):
            entry = mat[row][col]
            if entry.is_zero():
                continue
            nb = list(bits)
            nb[p], nb[p + 1] = row >> 1, row & 1
            nb = tuple(nb)
            val = out.get(nb, _x({})) + entry * amp
            if val.is_zero():
                out.pop(nb, None)
            else:
                out[nb] = val
    return out


def enhanced_trace(word: BraidWord, max_strands: int = MAX_STRANDS) -> LaurentPoly:
    """``trace(h^{(x)n} psi(word))`` with ``psi(sigma_i) = R`` on factors ``i, i+1``."""
    n = word.strands
    if n > max_strands:
        raise LimitError(f"{n} strands exceeds the limit of {max_strands}")
    total = _x({})
    for s in range(1 << n):
        bits = tuple((s >> (n - 1 - k)) & 1 for k in range(n))
        vec = {bits: _x({0: 1})}
        # matrix product psi(w1) psi(w2) ... applied to a column vector: last letter first
        for g in reversed(word.letters):
            vec = _apply_local(vec, R_MATRIX if g > 0 else R_INVERSE, abs(g) - 1, n)
            if not vec:
                break
        diag = vec.get(bits)
        if diag is None:
            continue
        weight = _x({0: 1})
        for b in bits:
            weight = weight * H_DIAG[b]
        total = total + weight * diag
    return total


def rmatrix_invariant(word: BraidWord, max_strands: int = MAX_STRANDS) -> LaurentPoly:
    """Enhanced trace divided by its value on the one-strand unknot."""
    unknot = H_DIAG[0] + H_DIAG[1]
    return enhanced_trace(word, max_strands).exact_div(unknot)


def rinv_as_jones(word: BraidWord, max_strands: int = MAX_STRANDS) -> LaurentPoly:
    """R-matrix invariant mapped onto the Jones normalization (see ALIGNMENT)."""
    return ALIGNMENT(rmatrix_invariant(word, max_strands))


def _align(p: LaurentPoly) -> LaurentPoly:
    return p.sign_alternate()


ALIGNMENT = _align
