"""Exact number theory helpers: valuations, Moebius, totient, divisors, CRT,
and factored integers for astronomically large certificate orders."""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, log10
import math

from sympy import factorint, isprime

INF = math.inf


def is_prime(n):
    return n >= 2 and bool(isprime(n))


def factor(n):
    """Prime factorization of a positive integer as a sorted dict {p: e}."""
    if n < 1:
        raise ValueError("factor expects a positive integer, got %r" % (n,))
    return dict(sorted(factorint(n).items()))


def prime_divisors(n):
    return sorted(factor(n))


def valuation(ell, d):
    """ell-adic valuation of an integer or Fraction; v(0) = inf."""
    if not is_prime(ell):
        raise ValueError("%r is not prime" % (ell,))
    if isinstance(d, Fraction):
        if d == 0:
            return INF
        return valuation(ell, d.numerator) - valuation(ell, d.denominator)
    if d == 0:
        return INF
    d = abs(d)
    v = 0
    while d % ell == 0:
        d //= ell
        v += 1
    return v


def prime_power_split(n):
    """Return (ell, e) if n = ell^e with e >= 1, else None."""
    if n < 2:
        return None
    f = factor(n)
    if len(f) != 1:
        return None
    (p, e), = f.items()
    return p, e


def divisors(n):
    """Ascending list of positive divisors of n."""
    divs = [1]
    for p, e in factor(n).items():
        divs = [d * p**j for d in divs for j in range(e + 1)]
    return sorted(divs)


def num_divisors(n):
    return reduce(lambda acc, e: acc * (e + 1), factor(n).values(), 1)


def moebius(n):
    if n < 1:
        raise ValueError("moebius expects n >= 1")
    f = factor(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def totient(n):
    if n < 1:
        raise ValueError("totient expects n >= 1")
    out = n
    for p in factor(n):
        out = out // p * (p - 1)
    return out


def moebius_sum_over_divisors(n):
    return sum(moebius(d) for d in divisors(n))


def lcm(*xs):
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out


def lcm_list(xs):
    return lcm(*xs) if xs else 1


def crt_solve(congruences):
    """Solve x = r_i mod m_i for pairwise coprime moduli; returns (x, prod m_i)."""
    x, mod = 0, 1
    for r, m in congruences:
        if m < 1:
            raise ValueError("modulus must be positive")
        if gcd(mod, m) != 1:
            raise ValueError("moduli %d and %d are not coprime" % (mod, m))
        # x + mod*t = r (mod m)
        t = ((r - x) * pow(mod, -1, m)) % m if m > 1 else 0
        x, mod = x + mod * t, mod * m
        x %= mod
    return x, mod


@dataclass(frozen=True)
class FactoredInteger:
    """Positive integer kept as {prime: exponent}; never expanded unless asked."""
    factors: tuple = field(default=())   # sorted ((p, e), ...)

    @staticmethod
    def from_int(n):
        return FactoredInteger(tuple(factor(n).items()))

    @staticmethod
    def from_dict(d):
        items = tuple(sorted((int(p), int(e)) for p, e in d.items() if e))
        for p, e in items:
            if e < 0 or not is_prime(p):
                raise ValueError("bad factor %r^%r" % (p, e))
        return FactoredInteger(items)

    def as_dict(self):
        return dict(self.factors)

    def __mul__(self, other):
        if isinstance(other, int):
            other = FactoredInteger.from_int(other)
        d = self.as_dict()
        for p, e in other.factors:
            d[p] = d.get(p, 0) + e
        return FactoredInteger.from_dict(d)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        return FactoredInteger(tuple((p, e * k) for p, e in self.factors if e * k))

    def value(self):
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    def log10(self):
        return sum(e * log10(p) for p, e in self.factors)

    def decimal_approx(self, digits=3):
        """Scientific notation with `digits` significant digits, e.g. '5.97e35'."""
        # exact when the value is modest; otherwise from high-precision logs
        if self.log10() < 300:
            n = self.value()
            s = "%.*e" % (digits - 1, n)
        else:
            s = _sci_from_factors(self.factors, digits)
        mant, ex = s.split("e")
        return "%se%d" % (mant, int(ex))

    def __str__(self):
        if not self.factors:
            return "1"
        return "*".join(str(p) if e == 1 else "%d^%d" % (p, e) for p, e in self.factors)


def _sci_from_factors(factors, digits):
    from mpmath import mp, mpf, log10 as mlog10, floor, power
    total = sum(e for _, e in factors)
    mp.dps = 30 + len(str(total))
    lg = sum(e * mlog10(mpf(p)) for p, e in factors)
    ex = int(floor(lg))
    mant = power(10, lg - ex)
    r = round(float(mant), digits - 1)
    if r >= 10:
        r /= 10
        ex += 1
    return "%.*fe%d" % (digits - 1, r, ex)


def factored_log_le(lhs, rhs_base, rhs_exp):
    """Exact test of lhs <= rhs_base ** rhs_exp, lhs a FactoredInteger and
    rhs_exp a (possibly huge) non-negative integer, without floating point.

    Compares log(lhs) = sum e_p log p against rhs_exp * log(rhs_base) using
    integer bounds: every p dividing lhs is <= some power of rhs_base."""
    if rhs_base < 2:
        return lhs.value() <= 1
    # Use rational upper bounds log_b(p) <= ceil-ish via integer powers:
    # p <= b^r  <=>  log_b p <= r.  Take r = smallest integer with b^r >= p;
    # then sum e_p * r_p >= log_b(lhs), so sum <= rhs_exp is sufficient.
    upper = 0
    for p, e in lhs.factors:
        r = 1
        while rhs_base**r < p:
            r += 1
        upper += e * r
    if upper <= rhs_exp:
        return True
    # refine exactly when the crude bound is inconclusive and numbers are small
    if rhs_exp <= 10**6 and lhs.log10() < 10**6:
        return lhs.value() <= rhs_base**rhs_exp
    return _log_compare_fine(lhs, rhs_base, rhs_exp)


def _log_compare_fine(lhs, base, exp):
    # refine r_p as rationals: p^den <= base^num, so log_b p <= num/den
    den = 64
    upper = Fraction(0)
    for p, e in lhs.factors:
        target = p**den
        num = 0
        while base**num < target:
            num += 1
        upper += Fraction(e * num, den)
    if upper <= exp:
        return True
    # lower bound for the other direction: p^den > base^(num-1)
    lower = Fraction(0)
    for p, e in lhs.factors:
        target = p**den
        num = 0
        while base ** (num + 1) <= target:
            num += 1
        lower += Fraction(e * num, den)
    if lower > exp:
        return False
    raise ArithmeticError("log comparison inconclusive at this precision")
