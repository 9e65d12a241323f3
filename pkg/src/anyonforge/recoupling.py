"""Racah-Wigner recoupling for SU(2)_k.

Every spin argument is a doubled integer (``2j``), so spin 1/2 is passed as
``1`` and spin 2 as ``4``.  This removes half-integer rounding from the
summation bounds.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .qarith import QContext, qfact, qint


@dataclass(frozen=True)
class SpinTriple:
    """Three doubled spins coupled at one vertex, at level ``level``.

    ``level=None`` means no truncation (classical SU(2)).
    """

    j1: int
    j2: int
    j3: int
    level: int | None = None

    def admissible(self) -> bool:
        return triangle_admissible(self)


def _classical_triangle(a: int, b: int, c: int) -> bool:
    if min(a, b, c) < 0 or (a + b + c) % 2:
        return False
    return abs(a - b) <= c <= a + b


def triangle_admissible(t: SpinTriple) -> bool:
    """Truncated Clebsch-Gordan admissibility of ``t``."""
    if not _classical_triangle(t.j1, t.j2, t.j3):
        return False
    if t.level is None:
        return True
    k = t.level
    if max(t.j1, t.j2, t.j3) > k:
        return False
    return t.j1 + t.j2 + t.j3 <= 2 * k


def _admissible(a: int, b: int, c: int, k: int | None) -> bool:
    return triangle_admissible(SpinTriple(a, b, c, k))


def delta_factor(ctx: QContext, t: SpinTriple) -> float:
    """q-deformed triangle coefficient Delta(j1, j2, j3)."""
    a, b, c = t.j1, t.j2, t.j3
    if not _admissible(a, b, c, ctx.level):
        raise ValueError(f"inadmissible triple {(a, b, c)} at level {ctx.level}")
    num = (
        qfact(ctx, (-a + b + c) // 2)
        * qfact(ctx, (a - b + c) // 2)
        * qfact(ctx, (a + b - c) // 2)
    )
    return math.sqrt(num / qfact(ctx, (a + b + c) // 2 + 1))


def _z_bounds(j1, j2, j12, j3, j, j23):
    # lower bounds from the four vertex sums, upper from the three "column" sums
    alphas = (
        (j1 + j2 + j12) // 2,
        (j12 + j3 + j) // 2,
        (j2 + j3 + j23) // 2,
        (j1 + j23 + j) // 2,
    )
    betas = (
        (j1 + j2 + j3 + j) // 2,
        (j1 + j12 + j3 + j23) // 2,
        (j2 + j12 + j + j23) // 2,
    )
    return alphas, betas


def wigner6j_q(ctx: QContext, j1: int, j2: int, j12: int, j3: int, j: int, j23: int) -> float:
    """q-6j symbol in the recoupling ordering ``(j1 j2 j12; j3 j j23)``.

    The four coupled triples are ``(j1,j2,j12)``, ``(j12,j3,j)``,
    ``(j2,j3,j23)`` and ``(j1,j23,j)``.  Returns 0 if any is inadmissible.
    """
    k = ctx.level
    triples = ((j1, j2, j12), (j12, j3, j), (j2, j3, j23), (j1, j23, j))
    if not all(_admissible(*tr, k) for tr in triples):
        return 0.0
    pref = 1.0
    for tr in triples:
        pref *= delta_factor(ctx, SpinTriple(*tr, k))
    alphas, betas = _z_bounds(j1, j2, j12, j3, j, j23)
    total = 0.0
    for z in range(max(alphas), min(betas) + 1):
        den = 1.0
        for a in alphas:
            den *= qfact(ctx, z - a)
        for b in betas:
            den *= qfact(ctx, b - z)
        total += (-1) ** z * qfact(ctx, z + 1) / den
    return pref * total


def _classical_delta_sq(a: int, b: int, c: int) -> Fraction:
    f = math.factorial
    return Fraction(
        f((-a + b + c) // 2) * f((a - b + c) // 2) * f((a + b - c) // 2),
        f((a + b + c) // 2 + 1),
    )


def racah_classical(j1: int, j2: int, j12: int, j3: int, j: int, j23: int) -> float:
    """Classical Racah coefficient ``W(j1 j2 j j3; j12 j23)``.

    Uses integer factorials with exact rational arithmetic in the sum; the
    classical 6j symbol equals ``(-1)^{(j1+j2+j3+j)/2} W``.
    """
    # W(abcd;ef) with a=j1 b=j2 c=j d=j3 e=j12 f=j23
    a, b, c, d, e, f = j1, j2, j, j3, j12, j23
    tri = ((a, b, e), (c, d, e), (a, c, f), (b, d, f))
    if not all(_classical_triangle(*t) for t in tri):
        return 0.0
    alphas = [sum(t) // 2 for t in tri]
    betas = [(a + b + c + d) // 2, (a + d + e + f) // 2, (b + c + e + f) // 2]
    fac = math.factorial
    omega = Fraction(0)
    for z in range(max(alphas), min(betas) + 1):
        den = 1
        for al in alphas:
            den *= fac(z - al)
        for be in betas:
            den *= fac(be - z)
        omega += Fraction((-1) ** (z + betas[0]) * fac(z + 1), den)
    sq = Fraction(1)
    for t in tri:
        sq *= _classical_delta_sq(*t)
    return math.sqrt(sq) * float(omega)


def wigner6j_classical(j1: int, j2: int, j12: int, j3: int, j: int, j23: int) -> float:
    """Classical 6j in the same argument order as :func:`wigner6j_q`."""
    sign = -1 if ((j1 + j2 + j3 + j) // 2) % 2 else 1
    return sign * racah_classical(j1, j2, j12, j3, j, j23)


def f_symbol(ctx: QContext, j1: int, j2: int, j3: int, j: int, j12: int, j23: int) -> float:
    """``[F^{j1 j2 j3}_j]_{j12, j23}`` for SU(2)_k.

    Maps the ``((j1 j2)_{j12} j3)_j`` basis onto ``(j1 (j2 j3)_{j23})_j``.
    """
    k = ctx.level
    left = _admissible(j1, j2, j12, k) and _admissible(j12, j3, j, k)
    right = _admissible(j2, j3, j23, k) and _admissible(j1, j23, j, k)
    if not (left and right):
        return 0.0
    if 0 in (j1, j2, j3, j):
        return 1.0
    sign = -1 if ((j1 + j2 + j3 + j) // 2) % 2 else 1
    norm = math.sqrt(qint(ctx, j12 + 1) * qint(ctx, j23 + 1))
    return sign * norm * wigner6j_q(ctx, j1, j2, j12, j3, j, j23)


def r_symbol(ctx: QContext, j1: int, j2: int, j: int) -> complex:
    """Braiding phase ``R^{j1 j2}_j`` for SU(2)_k."""
    if not _admissible(j1, j2, j, ctx.level):
        raise ValueError(f"{j} is not in the fusion of {j1} and {j2} at level {ctx.level}")
    # (-1)^{j-j1-j2} with doubled spins; j - j1 - j2 is an integer
    sign = -1 if ((j - j1 - j2) // 2) % 2 else 1
    # exponent of q: (1/2)[j(j+1) - j1(j1+1) - j2(j2+1)], in doubled spins /8
    cas = j * (j + 2) - j1 * (j1 + 2) - j2 * (j2 + 2)
    phase = 2 * math.pi * cas / (8 * ctx.denominator)
    return sign * cmath.exp(1j * phase)


def twist(ctx: QContext, j: int) -> complex:
    """Topological spin ``q^{j(j+1)}`` of doubled spin ``j``."""
    return cmath.exp(2j * math.pi * j * (j + 2) / (4 * ctx.denominator))
