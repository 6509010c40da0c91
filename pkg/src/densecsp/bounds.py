"""Exact comparisons against bounds of the form ``c * prod(base_k ** exp_k)``.

Exponents are rationals, so both sides are raised to the lcm of the exponent
denominators and compared as big integers.  No floating point is involved.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class PowerBound:
    coeff: Fraction
    factors: tuple = ()  # ((base: Fraction, exponent: Fraction), ...)

    @classmethod
    def of(cls, coeff, *factors):
        return cls(Fraction(coeff), tuple((Fraction(b), Fraction(e)) for b, e in factors))

    def __float__(self):
        out = float(self.coeff)
        for b, e in self.factors:
            out *= float(b) ** float(e)
        return out

    def holds(self, x):
        """Exactly decide ``x >= self``."""
        x = Fraction(x)
        if self.coeff <= 0 or any(b == 0 and e > 0 for b, e in self.factors):
            return x >= 0
        if x <= 0:
            return False
        D = 1
        for _, e in self.factors:
            D = D * e.denominator // math.gcd(D, e.denominator)
        # x^D >= coeff^D * prod(b^(e*D))
        lhs, rhs = x ** D, self.coeff ** D
        for b, e in self.factors:
            k = int(e * D)
            if k >= 0:
                rhs *= b ** k
            else:
                lhs *= b ** (-k)
        return lhs >= rhs

    def to_json(self):
        return {"coeff": str(self.coeff),
                "factors": [[str(b), str(e)] for b, e in self.factors]}

    @classmethod
    def from_json(cls, d):
        return cls.of(Fraction(d["coeff"]),
                      *((Fraction(b), Fraction(e)) for b, e in d["factors"]))


def root_level_bound(m, q, i):
    """``m * q^(-1/i)`` edges."""
    return PowerBound.of(m, (q, Fraction(-1, i)))


def smallest_level(q, eps):
    """Smallest ``i >= 1`` with ``q <= (1 + eps)^i``, i.e. ``ceil(ln q / ln(1 + eps))``."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    i, base, power = 1, 1 + eps, 1 + eps
    while power < q:
        power *= base
        i += 1
    return i


def float_at_least(x, bound, slack=1e-12):
    """``x >= bound`` up to a relative slack, for sums of irrational terms."""
    return x >= bound - slack * max(1.0, abs(bound))
