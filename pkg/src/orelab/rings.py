"""Exact coefficient rings: integers, rationals, and prime fields.

Scalars are plain Python objects (int for ZZ and GF(p), Fraction for QQ);
the ring object routes arithmetic so that prime-field reduction happens in
one place. No floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import MalformedInput


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class CoeffRing:
    """One of ZZ, QQ, or GF(p). Immutable."""

    __slots__ = ("kind", "p")

    INTEGERS = "integers"
    RATIONALS = "rationals"
    PRIME_FIELD = "prime_field"

    def __init__(self, kind: str, p: int | None = None):
        if kind not in (self.INTEGERS, self.RATIONALS, self.PRIME_FIELD):
            raise ValueError(f"unknown ring kind {kind!r}")
        if kind == self.PRIME_FIELD:
            if p is None or not _is_prime(p):
                raise ValueError(f"prime field requires a prime modulus, got {p!r}")
        elif p is not None:
            raise ValueError("modulus only meaningful for prime fields")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "p", p)

    def __setattr__(self, *a):
        raise AttributeError("CoeffRing is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, CoeffRing)
            and self.kind == other.kind
            and self.p == other.p
        )

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        if self.kind == self.PRIME_FIELD:
            return f"GF({self.p})"
        return "ZZ" if self.kind == self.INTEGERS else "QQ"

    # --- structural queries ---

    @property
    def is_field(self) -> bool:
        return self.kind != self.INTEGERS

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == self.PRIME_FIELD else 0

    # --- element arithmetic ---

    @property
    def zero(self):
        return Fraction(0) if self.kind == self.RATIONALS else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == self.RATIONALS else 1

    def from_int(self, n: int):
        if self.kind == self.RATIONALS:
            return Fraction(n)
        if self.kind == self.PRIME_FIELD:
            return n % self.p
        return n

    def add(self, a, b):
        c = a + b
        return c % self.p if self.kind == self.PRIME_FIELD else c

    def sub(self, a, b):
        c = a - b
        return c % self.p if self.kind == self.PRIME_FIELD else c

    def neg(self, a):
        return (-a) % self.p if self.kind == self.PRIME_FIELD else -a

    def mul(self, a, b):
        c = a * b
        return c % self.p if self.kind == self.PRIME_FIELD else c

    def is_zero(self, a) -> bool:
        return a == 0

    def inv(self, a):
        """Multiplicative inverse; fields only."""
        if self.kind == self.RATIONALS:
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return Fraction(1) / a
        if self.kind == self.PRIME_FIELD:
            if a % self.p == 0:
                raise ZeroDivisionError("inverse of zero in prime field")
            return pow(a, -1, self.p)
        raise ZeroDivisionError("integers form no field; no general inverses")

    def div(self, a, b):
        """Exact division. Over ZZ requires divisibility."""
        if self.kind == self.INTEGERS:
            q, r = divmod(a, b)
            if r != 0:
                raise ZeroDivisionError(f"{a} not divisible by {b} over the integers")
            return q
        return self.mul(a, self.inv(b))

    # --- text encoding (exact values only) ---

    def parse(self, text: str, field: str | None = None):
        """Parse a decimal integer string or an 'a/b' rational string."""
        if not isinstance(text, str):
            raise MalformedInput(f"expected a string value, got {text!r}", field=field)
        s = text.strip()
        try:
            if "/" in s:
                num_s, den_s = s.split("/", 1)
                num, den = int(num_s), int(den_s)
                if den == 0:
                    raise MalformedInput(f"zero denominator in {s!r}", field=field)
                if self.kind == self.RATIONALS:
                    return Fraction(num, den)
                if self.kind == self.PRIME_FIELD:
                    if den % self.p == 0:
                        raise MalformedInput(
                            f"denominator of {s!r} vanishes mod {self.p}", field=field
                        )
                    return (num * pow(den, -1, self.p)) % self.p
                raise MalformedInput(
                    f"rational value {s!r} not allowed over the integers", field=field
                )
            return self.from_int(int(s))
        except ValueError:
            raise MalformedInput(f"cannot parse exact value {s!r}", field=field) from None

    def fmt(self, a) -> str:
        if isinstance(a, Fraction) and a.denominator != 1:
            return f"{a.numerator}/{a.denominator}"
        return str(int(a))


ZZ = CoeffRing(CoeffRing.INTEGERS)
QQ = CoeffRing(CoeffRing.RATIONALS)


def GF(p: int) -> CoeffRing:
    return CoeffRing(CoeffRing.PRIME_FIELD, p)
