"""Deformation parameter and q-numbers for SU(2)_k.

Two bracket conventions live here.  ``qint`` is the level-k bracket
``[n] = (q^{n/2} - q^{-n/2}) / (q^{1/2} - q^{-1/2})`` with
``q = exp(2 pi i / (k + 2))``, evaluated through its closed sine form.
``qint_generic`` is the symmetric bracket ``(q^n - q^{-n}) / (q - q^{-1})``
at an arbitrary nonzero complex ``q``; it agrees with ``qint`` when evaluated
at ``exp(i pi / (k + 2))``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class QContext:
    """Level ``k`` and its root of unity ``q = exp(2 pi i / (k + 2))``."""

    level: int
    tolerance: float = DEFAULT_TOL
    q: complex = field(init=False)

    def __post_init__(self) -> None:
        if not isinstance(self.level, int) or self.level < 1:
            raise ValueError(f"level must be a positive integer, got {self.level!r}")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        object.__setattr__(self, "q", cmath.exp(2j * math.pi / (self.level + 2)))

    @property
    def k(self) -> int:
        return self.level

    @property
    def denominator(self) -> int:
        """``k + 2``, the order of ``q``."""
        return self.level + 2


def qint(ctx: QContext, n: int) -> float:
    """``[n]_q = sin(n pi / (k+2)) / sin(pi / (k+2))``."""
    if n < 0:
        raise ValueError(f"qint needs n >= 0, got {n}")
    if n == 0:
        return 0.0
    if n == 1:
        return 1.0
    r = ctx.denominator
    return math.sin(n * math.pi / r) / math.sin(math.pi / r)


def qfact(ctx: QContext, n: int) -> float:
    """Product ``[1][2]...[n]``; ``[0]! = 1``."""
    if n < 0:
        raise ValueError(f"qfact needs n >= 0, got {n}")
    out = 1.0
    for m in range(2, n + 1):
        out *= qint(ctx, m)
    return out


def qint_generic(q: complex, n: int, *, variant: str = "symmetric") -> complex:
    """q-integer at a generic deformation parameter.

    ``variant="symmetric"`` gives ``(q^n - q^-n)/(q - q^-1)``; ``"geometric"``
    gives ``(1 - q^n)/(1 - q)``.  Both return the limit ``n`` at ``q = 1``.
    The symmetric form also takes the limit ``n (-1)^{n-1}`` at ``q = -1``.
    """
    q = complex(q)
    if q == 0:
        raise ValueError("q must be nonzero")
    if variant == "geometric":
        if q == 1:
            return complex(n)
        return (1 - q**n) / (1 - q)
    if variant != "symmetric":
        raise ValueError(f"unknown variant {variant!r}")
    if q == 1:
        return complex(n)
    if q == -1:
        return complex(n * (-1) ** (n - 1))
    return (q**n - q ** (-n)) / (q - 1 / q)
