"""Abelianizations of Fuchsian groups via the mid_i invariants."""

from dataclasses import dataclass

from .arith import factor, lcm_list, prime_divisors
from .signatures import euler_char


class PreconditionError(ValueError):
    pass


def mids(m):
    """mid_i(m): for every prime, sort the valuations of the entries; mid_i
    collects the i-th smallest prime powers. mid_1 = gcd, mid_k = lcm."""
    m = list(m)
    k = len(m)
    out = [1] * k
    primes = set()
    for x in m:
        primes.update(prime_divisors(x))
    for p in sorted(primes):
        vals = sorted(factor(x).get(p, 0) for x in m)
        for i, v in enumerate(vals):
            out[i] *= p**v
    return tuple(out)


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion_chain: tuple   # may contain 1s; each entry divides the next

    def torsion(self):
        """Invariant factors with trivial ones stripped."""
        return tuple(t for t in self.torsion_chain if t > 1)

    def torsion_order(self):
        out = 1
        for t in self.torsion_chain:
            out *= t
        return out

    def __str__(self):
        parts = ["Z^%d" % self.free_rank] if self.free_rank else []
        parts += ["Z_%d" % t for t in self.torsion()]
        return " x ".join(parts) if parts else "1"


def abelianize(s):
    ms = mids(s.cones)
    if s.punctures > 0:
        return AbelianInvariants(2 * s.genus + s.punctures - 1, ms)
    return AbelianInvariants(2 * s.genus, ms[:-1] if ms else ())


def same_abelianization(a, b):
    x, y = abelianize(a), abelianize(b)
    return x.free_rank == y.free_rank and x.torsion() == y.torsion()


def lcm_forced_equal(a, b):
    """For unpunctured signatures with equal abelianization and equal Euler
    characteristic the cone lcms agree; return it."""
    if a.punctures or b.punctures:
        raise PreconditionError("both signatures must be unpunctured")
    if not same_abelianization(a, b):
        raise PreconditionError("abelianizations differ")
    if euler_char(a) != euler_char(b):
        raise PreconditionError("Euler characteristics differ: %s vs %s"
                                % (euler_char(a), euler_char(b)))
    M, N = lcm_list(a.cones), lcm_list(b.cones)
    if M != N:
        raise AssertionError("cone lcms differ (%d vs %d) despite equal invariants" % (M, N))
    return M


def pad_ones(m, k):
    """Append 1s so the multiset has length k (1s are invisible to mids/chi)."""
    return tuple(sorted(list(m) + [1] * (k - len(m))))


# finite abelian quotient test -------------------------------------------------

def _prime_profile(chain, p):
    """Exponents of p in each cyclic factor (nonzero only)."""
    out = []
    for t in chain:
        e = 0
        while t % p == 0:
            t //= p
            e += 1
        if e:
            out.append(e)
    return sorted(out, reverse=True)


def is_abelian_quotient(target_chain, free_rank, source_chain):
    """Is the finite abelian group prod Z_t (t in target_chain) a quotient of
    Z^free_rank x prod Z_s (s in source_chain)?  Per prime p and level j the
    number of target factors of order >= p^j must not exceed free_rank plus the
    number of source factors of order >= p^j."""
    primes = set()
    for t in target_chain:
        if t > 1:
            primes.update(prime_divisors(t))
    for p in primes:
        tp = _prime_profile(target_chain, p)
        sp = _prime_profile(source_chain, p)
        for j in range(1, max(tp) + 1):
            need = sum(1 for e in tp if e >= j)
            have = free_rank + sum(1 for e in sp if e >= j)
            if need > have:
                return False
    return True
