"""Scrapes, coscrapes and closures of cone multisets, and the searches for a
divisor at which two multisets with equal invariants come apart."""

from dataclasses import dataclass
from math import gcd

from .abelianization import PreconditionError, mids, pad_ones
from .arith import divisors, lcm_list
from .signatures import cone_chi


class InternalContradiction(RuntimeError):
    """A search that a theorem guarantees to succeed came back empty."""


@dataclass(frozen=True)
class Factor:
    parent: tuple
    values: tuple

    def __post_init__(self):
        if len(self.parent) != len(self.values):
            raise ValueError("factor and parent lengths differ")
        for c, m in zip(self.values, self.parent):
            if m % c:
                raise ValueError("%d does not divide %d" % (c, m))

    def chi(self):
        return cone_chi(self.values)

    def lcm(self):
        return lcm_list(list(self.values))

    def stripped(self):
        return tuple(sorted(v for v in self.values if v != 1))


def _modulus(m, M):
    L = lcm_list(list(m))
    if M is None:
        return L
    if M % L:
        raise ValueError("modulus %d is not a multiple of lcm %d" % (M, L))
    return M


def scrape(m, s, M=None):
    """m_s: entry-wise gcd(d, M/s)."""
    M = _modulus(m, M)
    if s < 1 or M % s:
        raise ValueError("%d does not divide %d" % (s, M))
    return Factor(tuple(m), tuple(gcd(d, M // s) for d in m))


def coscrape(m, t, M=None):
    """m^t = m_{M/t}: the largest factor of m with lcm dividing t."""
    M = _modulus(m, M)
    if t < 1 or M % t:
        raise ValueError("%d does not divide %d" % (t, M))
    return scrape(m, M // t, M)


def close_entry(c, m):
    if c == 1 and m % 2 == 0 and m % 3:
        return 2
    if c == 1 and m % 3 == 0:
        return 3
    if c == 2 and m % 6 == 0:
        return 3
    return c


def closure(f):
    return Factor(f.parent, tuple(close_entry(c, m) for c, m in zip(f.values, f.parent)))


def is_good(values):
    """Bad: one entry, or two distinct entries (after dropping 1s)."""
    xs = [v for v in values if v != 1]
    if len(xs) == 1:
        return False
    if len(xs) == 2 and xs[0] != xs[1]:
        return False
    return True


def _prepare(m, n):
    m, n = tuple(sorted(m)), tuple(sorted(n))
    k = max(len(m), len(n))
    return pad_ones(m, k), pad_ones(n, k)


def find_distinguishing_scrape(m, n):
    """Smallest s | M with chi(cl(m_s)) != chi(cl(n_s))."""
    m, n = _prepare(m, n)
    if m == n:
        raise PreconditionError("multisets are equal")
    if mids(m) != mids(n):
        raise PreconditionError("mids differ")
    if cone_chi(m) != cone_chi(n):
        raise PreconditionError("Euler characteristics differ")
    M = lcm_list(list(m))
    for s in divisors(M):
        a, b = closure(scrape(m, s, M)), closure(scrape(n, s, M))
        if a.chi() != b.chi():
            return s
    raise InternalContradiction("no distinguishing scrape for %r vs %r" % (m, n))


@dataclass(frozen=True)
class GoodScrape:
    t: int
    modulus: int
    clause: int            # 1: chi differs, one side good; 2: exactly one good
    winner: str            # "left" or "right"
    left: Factor           # closed coscrapes
    right: Factor


def find_good_distinguishing_scrape(m, n):
    """Smallest t | M (M the common lcm) where the closed coscrapes either have
    different chi with at least one good, or exactly one is good."""
    m, n = _prepare(m, n)
    if m == n:
        raise PreconditionError("multisets are equal")
    if mids(m)[:-1] != mids(n)[:-1]:
        raise PreconditionError("abelianization data differ")
    M = lcm_list(list(m) + list(n))
    for t in divisors(M):
        a, b = closure(coscrape(m, t, M)), closure(coscrape(n, t, M))
        ga, gb = is_good(a.values), is_good(b.values)
        ca, cb = a.chi(), b.chi()
        if ca != cb and (ga or gb):
            clause = 1
        elif ga != gb:
            clause = 2
        else:
            continue
        if ga and gb:
            winner = "left" if ca < cb else "right"
        else:
            winner = "left" if ga else "right"
        return GoodScrape(t, M, clause, winner, a, b)
    raise InternalContradiction("no good distinguishing scrape for %r vs %r" % (m, n))
