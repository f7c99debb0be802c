"""Exact univariate polynomials over the integers and rationals.

Coefficients are stored in ascending degree order. Integer coefficients stay
Python ``int``; anything else is kept as :class:`fractions.Fraction`, with
integral fractions collapsed back to ``int`` so equality and printing are
canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


def normalize(x: Number) -> Number:
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"exact number expected, got {type(x).__name__}")
    return x


def parse_number(text: str | int) -> Number:
    """Parse ``"3"``, ``"-7/2"`` or an int into an exact number."""
    if isinstance(text, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(text, int):
        return text
    if isinstance(text, Fraction):
        return normalize(text)
    if not isinstance(text, str):
        raise TypeError(f"cannot parse {text!r} as an exact number")
    return normalize(Fraction(text.strip()))


def exact_div(a: Number, b: Number) -> Number:
    if isinstance(a, int) and isinstance(b, int) and a % b == 0:
        return a // b
    return normalize(Fraction(a) / b)


def format_number(x: Number) -> str:
    return str(normalize(x))


@dataclass(frozen=True)
class Poly:
    """Polynomial with exact coefficients, ascending degree."""

    coeffs: tuple[Number, ...]

    def __post_init__(self) -> None:
        cs = [normalize(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def of(cls, coeffs: Iterable[Number | str]) -> "Poly":
        return cls(tuple(parse_number(c) for c in coeffs))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def const(cls, c: Number) -> "Poly":
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Number:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def coeff(self, k: int) -> Number:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __call__(self, x: Number) -> Number:
        acc: Number = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return normalize(acc) if isinstance(acc, (int, Fraction)) else acc

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(tuple(self.coeff(k) + other.coeff(k) for k in range(n)))

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly | Number") -> "Poly":
        if not isinstance(other, Poly):
            return Poly(tuple(c * other for c in self.coeffs))
        if self.is_zero or other.is_zero:
            return Poly(())
        out: list[Number] = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        result = Poly((1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        lead = other.leading
        quot: list[Number] = [0] * max(len(rem) - d, 0)
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            q = exact_div(c, lead)
            quot[k - d] = q
            for j, b in enumerate(other.coeffs):
                rem[k - d + j] -= q * b
        return Poly(tuple(quot)), Poly(tuple(rem[:d] if d > 0 else ()))

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def derivative(self) -> "Poly":
        return Poly(tuple(k * c for k, c in enumerate(self.coeffs) if k))

    def monic(self) -> "Poly":
        if self.is_zero:
            raise ValueError("zero polynomial has no monic normalization")
        lead = self.leading
        return Poly(tuple(exact_div(c, lead) for c in self.coeffs))

    def reversed(self) -> "Poly":
        """x^deg * p(1/x): roots inverted (zero roots dropped)."""
        return Poly(tuple(reversed(self.coeffs)))

    def substitute_scaled(self, s: Number) -> "Poly":
        """p(s*x)."""
        return Poly(tuple(c * s**k for k, c in enumerate(self.coeffs)))

    def strip_zero_roots(self) -> tuple["Poly", int]:
        k = 0
        while k < len(self.coeffs) and self.coeffs[k] == 0:
            k += 1
        return Poly(self.coeffs[k:]), k

    def clear_denominators(self) -> "Poly":
        """Primitive integer polynomial with the same roots and positive lead."""
        if self.is_zero:
            return self
        den = 1
        for c in self.coeffs:
            if isinstance(c, Fraction):
                den = den * c.denominator // _gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for c in ints:
            g = _gcd(g, c)
        ints = [c // g for c in ints]
        if ints[-1] < 0:
            ints = [-c for c in ints]
        return Poly(tuple(ints))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts: list[str] = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if k == 0:
                body = format_number(mag)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                if mag == 1:
                    body = mono
                elif isinstance(mag, Fraction):
                    body = f"({mag})*{mono}"
                else:
                    body = f"{mag}{mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over the rationals (zero if both are zero)."""
    while not b.is_zero:
        a, b = b, a % b
    return a.monic() if not a.is_zero else a


def squarefree_factors(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's square-free decomposition: [(factor, multiplicity), ...] over Q."""
    if p.degree < 1:
        return []
    p = p.monic()
    out: list[tuple[Poly, int]] = []
    a = poly_gcd(p, p.derivative())
    b = p // a
    c = p.derivative() // a
    d = c - b.derivative()
    i = 1
    while b.degree >= 1:
        a = poly_gcd(b, d)
        if a.degree >= 1:
            out.append((a, i))
        b = b // a
        c = d // a
        d = c - b.derivative()
        i += 1
    return out


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero:
        r = seq[-2] % seq[-1]
        seq.append(-r)
    return seq[:-1]


def _sign_at(p: Poly, x: Number | None, at_plus_inf: bool) -> int:
    if x is None:
        lead = p.leading
        if at_plus_inf or p.degree % 2 == 0:
            return (lead > 0) - (lead < 0)
        return -((lead > 0) - (lead < 0))
    v = p(x)
    return (v > 0) - (v < 0)


def _variations(signs: Sequence[int]) -> int:
    nz = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def count_real_roots(p: Poly, lo: Number | None = None, hi: Number | None = None) -> int:
    """Number of distinct real roots in (lo, hi]; ``None`` means infinity."""
    if p.degree < 1:
        return 0
    seq = sturm_sequence(p.monic())
    v_lo = _variations([_sign_at(q, lo, False) for q in seq])
    v_hi = _variations([_sign_at(q, hi, True) for q in seq])
    return v_lo - v_hi


def count_real_roots_with_multiplicity(p: Poly, lo: Number | None = None, hi: Number | None = None) -> int:
    return sum(m * count_real_roots(f, lo, hi) for f, m in squarefree_factors(p))


def sign_changes(coeffs: Sequence[Number]) -> int:
    """Descartes sign variations of a coefficient list."""
    return _variations([(c > 0) - (c < 0) for c in coeffs])


def binomial_bounds(n: int) -> list[int]:
    """C(n, k) for k = 0..n."""
    out = [1]
    for k in range(1, n + 1):
        out.append(out[-1] * (n - k + 1) // k)
    return out
