"""Exact integer Laurent polynomials in one variable."""

from __future__ import annotations

from typing import Iterable, Mapping


class LaurentPoly:
    """Integer Laurent polynomial ``sum c_k v^k``; zero coefficients are never stored."""

    __slots__ = ("var", "_c")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = (), var: str = "A"):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[int, int] = {}
        for k, v in items:
            if not isinstance(v, int):
                raise TypeError("coefficients must be integers")
            c[int(k)] = c.get(int(k), 0) + v
        self._c = {k: v for k, v in c.items() if v}
        self.var = var

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1, var: str = "A") -> "LaurentPoly":
        return cls({exp: coeff}, var)

    @classmethod
    def const(cls, value: int, var: str = "A") -> "LaurentPoly":
        return cls({0: value}, var)

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(sorted(self._c.items()))

    def is_zero(self) -> bool:
        return not self._c

    def degree_range(self) -> tuple[int, int]:
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return min(self._c), max(self._c)

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.var != self.var and other._c and self._c:
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other, self.var)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out = dict(self._c)
        for k, v in o._c.items():
            out[k] = out.get(k, 0) + v
        return LaurentPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -v for k, v in self._c.items()}, self.var)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out: dict[int, int] = {}
        for k1, v1 in self._c.items():
            for k2, v2 in o._c.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + v1 * v2
        return LaurentPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (k, v), = self._c.items()
            if abs(v) != 1:
                raise ValueError("monomial inverse needs a unit coefficient")
            return LaurentPoly({-k * -n: v ** -n}, self.var)
        out = LaurentPoly.const(1, self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other, self.var)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self._c and not other._c:
            return True
        return self.var == other.var and self._c == other._c

    def __hash__(self):
        return hash((self.var, tuple(sorted(self._c.items()))))

    def divmod(self, other: "LaurentPoly") -> tuple["LaurentPoly", "LaurentPoly"]:
        """Long division from the top degree; the remainder has top degree
        below the divisor's span offset."""
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lo_o, hi_o = o.degree_range()
        lead = o._c[hi_o]
        rem = LaurentPoly(self._c, self.var)
        quot: dict[int, int] = {}
        while not rem.is_zero():
            lo_r, hi_r = rem.degree_range()
            if hi_r - lo_r < hi_o - lo_o:
                break
            c = rem._c[hi_r]
            if c % lead:
                break
            k = hi_r - hi_o
            quot[k] = quot.get(k, 0) + c // lead
            rem = rem - LaurentPoly({k: c // lead}, self.var) * o
        return LaurentPoly(quot, self.var), rem

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def substitute_power(self, k: int, var: str | None = None) -> "LaurentPoly":
        """``p(v) -> p(v^k)``; ``k = -1`` mirrors."""
        return LaurentPoly({e * k: c for e, c in self._c.items()}, var or self.var)

    def halve_exponents(self, var: str | None = None) -> "LaurentPoly":
        if any(e % 2 for e in self._c):
            raise ValueError("odd exponent present")
        return LaurentPoly({e // 2: c for e, c in self._c.items()}, var or self.var)

    def sign_alternate(self) -> "LaurentPoly":
        """``p(v) -> p(-v)``."""
        return LaurentPoly({e: c * (-1) ** (e % 2) for e, c in self._c.items()}, self.var)

    def evaluate(self, value: complex) -> complex:
        return sum(c * value**e for e, c in self._c.items())

    def __repr__(self):
        return f"LaurentPoly({self.coeffs}, var={self.var!r})"

    def __str__(self):
        return self.format()

    def format(self, style: str = "plain") -> str:
        """Render as text.

        ``"plain"``: ``c*v^e`` terms.  ``"t-half"``: exponents of
        ``x = t^(1/2)`` as ``c*t^(e/2)`` terms.  ``"t"``: the same polynomial
        in reduced human form (``-t^(1/2) - t^(5/2)``, ``t + t^3``).
        """
        if style not in ("plain", "t-half", "t"):
            raise ValueError(f"unknown style {style!r}")
        if not self._c:
            return "0"
        terms = []
        for e, c in sorted(self._c.items()):
            if style == "plain":
                terms.append(f"{c}*{self.var}^{e}")
            elif style == "t-half":
                terms.append(f"{c}*t^({e}/2)")
            elif e == 0:
                terms.append(str(c))
            else:
                power = str(e // 2) if e % 2 == 0 else f"({e}/2)"
                mono = "t" if e == 2 else f"t^{power}"
                terms.append(mono if c == 1 else "-" + mono if c == -1 else f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")
