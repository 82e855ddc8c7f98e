"""Smooth and c-smooth quotients: Macbeath's criterion, the dihedral
construction, the prime-power search behind maximally smooth PSL(2,q)
representations, brute-force maximal smoothness, kernel signatures."""

from dataclasses import dataclass, field
from itertools import product
from math import gcd

from .arith import (crt_solve, divisors, factor, lcm_list, prime_divisors, prime_power_split,
                    valuation)
from .finite_groups import Homomorphism, NotAQuotient, find_epimorphism, relation_value
from .scrapes import Factor, closure
from .signatures import Signature, cone_chi

DEFAULT_SCAN_CAP = 10**7


class BoundExceeded(RuntimeError):
    def __init__(self, cap, what="prime power scan"):
        super().__init__("%s exceeded the cap %d" % (what, cap))
        self.cap = cap


class InconsistentInput(ValueError):
    pass


class InfeasibleSystem(RuntimeError):
    """No odd prime power satisfies the congruence and incongruences."""


# --- Macbeath ------------------------------------------------------------------

def macbeath_admits(m, q):
    """Every m_i divides one of ell, (q-1)/2, (q+1)/2  (q = ell^e odd)."""
    m = tuple(m)
    if len(m) < 3:
        raise ValueError("criterion needs at least three cone orders")
    if any(x == 1 for x in m):
        raise ValueError("cone orders must be >= 2")
    split = prime_power_split(q)
    if split is None or q % 2 == 0:
        raise ValueError("q must be an odd prime power")
    ell = split[0]
    targets = (ell, (q - 1) // 2, (q + 1) // 2)
    return all(any(t % x == 0 for t in targets) for x in m)


def is_odd_prime_power(q, max_exp=3):
    if q < 3 or q % 2 == 0:
        return False
    split = prime_power_split(q)
    return split is not None and split[1] <= max_exp


def odd_prime_powers(start=3, max_exp=3):
    q = max(start, 3)
    while True:
        if is_odd_prime_power(q, max_exp):
            yield q
        q += 1


def smallest_macbeath_q(m, cap=DEFAULT_SCAN_CAP):
    for q in odd_prime_powers():
        if q > cap:
            raise BoundExceeded(cap)
        if macbeath_admits(m, q):
            return q


# --- smooth representations ----------------------------------------------------

@dataclass
class SmoothRep:
    source: Signature
    target: object                # FiniteGroup
    elliptic_orders: tuple
    parabolic_orders: tuple = ()
    witness: Homomorphism = None
    image_order: int = None

    def check(self):
        G, h = self.target, self.witness
        if relation_value(G, h) != 0:
            return False
        if tuple(G.orders[x] for x in h.elliptic) != tuple(self.elliptic_orders):
            return False
        return tuple(G.orders[y] for y in h.parabolic) == tuple(self.parabolic_orders)


@dataclass(frozen=True)
class DihedralElement:
    """r^rotation s^reflected in D_{2n}."""
    n: int
    rotation: int
    reflected: bool = False

    def __mul__(self, other):
        j = other.rotation if not self.reflected else -other.rotation
        return DihedralElement(self.n, (self.rotation + j) % self.n,
                               self.reflected != other.reflected)

    def inverse(self):
        if self.reflected:
            return self
        return DihedralElement(self.n, (-self.rotation) % self.n, False)

    def is_identity(self):
        return self.rotation == 0 and not self.reflected

    def order(self):
        if self.reflected:
            return 2
        return self.n // gcd(self.n, self.rotation)


@dataclass
class DihedralRep:
    """Explicit smooth map (genus; 0; m) -> D_{2n}."""
    source: Signature
    n: int
    handles: tuple        # DihedralElements a1, b1, ...
    elliptic: tuple       # images of x_i

    @property
    def target_order(self):
        return 2 * self.n

    def relation(self):
        one = DihedralElement(self.n, 0)
        x = one
        for i in range(0, len(self.handles), 2):
            a, b = self.handles[i], self.handles[i + 1]
            x = x * a * b * a.inverse() * b.inverse()
        for e in self.elliptic:
            x = x * e
        return x

    def check(self):
        if not self.relation().is_identity():
            return False
        return tuple(e.order() for e in self.elliptic) == tuple(self.source.cones)

    def image_order(self):
        # image is generated by rotations r^j plus (possibly) a reflection
        g = self.n
        refl = False
        for e in tuple(self.handles) + tuple(self.elliptic):
            if e.reflected:
                refl = True
        # with a reflection s present, r^j s and s give r^j; collect rotations
        base = None
        for e in tuple(self.handles) + tuple(self.elliptic):
            if e.reflected:
                if base is None:
                    base = e
                else:
                    g = gcd(g, (e.rotation - base.rotation) % self.n)
            else:
                g = gcd(g, e.rotation)
        return (self.n // g) * (2 if refl else 1)


def smooth_dihedral(m, genus=1):
    """Smooth map (genus; 0; m) -> dihedral group; extra handles go to 1."""
    m = tuple(sorted(m))
    if not m or any(x < 2 for x in m):
        raise ValueError("need a nonempty multiset of orders >= 2")
    if genus < 1:
        raise ValueError("genus must be at least 1")
    M = lcm_list(list(m))
    sigma = sum(M // x for x in m)
    if M % 2:
        n = M
        rot = [M // x for x in m]
        alpha = (-((M + 1) // 2) * sigma) % n
    else:
        n = 2 * M
        rot = [2 * M // x for x in m]
        alpha = (-sigma) % n
    one = DihedralElement(n, 0)
    handles = [DihedralElement(n, alpha), DihedralElement(n, 0, True)] + [one] * (2 * (genus - 1))
    return DihedralRep(Signature(genus, 0, m), n, tuple(handles),
                       tuple(DihedralElement(n, r % n) for r in rot))


# --- prime power search for maximally smooth PSL(2,q) ----------------------------

@dataclass
class PrimeSearchSpec:
    X: int
    M: int
    P: tuple
    P1: tuple
    P2: tuple
    P3: tuple
    moduli: tuple = field(default=())   # incongruence moduli, one per (set, prime)

    def admits(self, q):
        if (q - 1) % (2 * self.X):
            return False
        for mod in self.moduli:
            r = q % mod
            if r == 1 or r == mod - 1:
                return False
        return True


def prime_search_spec(x, m):
    X, M = lcm_list(list(x)), lcm_list(list(m))
    if M % X:
        raise ValueError("lcm(x) must divide lcm(m)")
    P = [p for p in prime_divisors(M) if valuation(p, X) < valuation(p, M)]
    two, three = X % 2 == 0, X % 3 == 0
    if not two and not three:
        P1 = [p for p in P if p not in (2, 3)]
    elif not two:
        P1 = [p for p in P if p != 2]
    elif not three:
        P1 = [p for p in P if p != 3]
    else:
        P1 = list(P)
    P2 = [l for l in prime_divisors(M) if M % (2 * l) == 0] \
        if (not two and valuation(2, X) < valuation(2, M)) else []
    P3 = [l for l in prime_divisors(M) if M % (3 * l) == 0] \
        if (not three and valuation(3, X) < valuation(3, M)) else []
    moduli = [2 * p ** (valuation(p, X) + 1) for p in P1]
    moduli += [2 * (2 * p) for p in P2] + [2 * (3 * p) for p in P3]
    return PrimeSearchSpec(X, M, tuple(P), tuple(P1), tuple(P2), tuple(P3), tuple(moduli))


def system_is_feasible(spec, limit=10**6):
    """False when no odd prime power can satisfy the system.  The conditions
    only depend on q mod P = lcm(2X, moduli), so a prime power coprime to P
    needs an admissible unit residue; the finitely many prime powers sharing
    a prime with P are tested directly.  None when P/2X is beyond `limit`."""
    P = lcm_list([2 * spec.X] + list(spec.moduli))
    n = P // (2 * spec.X)
    if n > limit:
        return None
    for j in range(n):
        r = 1 + 2 * spec.X * j
        if gcd(r, P) == 1 and spec.admits(r):
            return True
    return any(spec.admits(l**e) for l in prime_divisors(P) if l > 2 for e in (1, 2, 3))


def find_q(x, m, cap=DEFAULT_SCAN_CAP):
    """Smallest odd prime power q (exponent <= 3) with q = 1 mod 2X and the
    incongruences attached to P1, P2, P3."""
    spec = prime_search_spec(x, m)
    if system_is_feasible(spec) is False:
        raise InfeasibleSystem("no prime power solves the system for x=%s in m=%s"
                               % (tuple(x), tuple(m)))
    step = 2 * spec.X
    q = 1 + step
    while q <= cap:
        if is_odd_prime_power(q) and spec.admits(q):
            return q
        q += step
    raise BoundExceeded(cap)


def constructive_q_residue(x, m):
    """The existence argument made explicit: pick k_p per prime, glue the k_p
    by CRT and return (k, modulus, 1 + 2kX); every prime of the arithmetic
    progression (1 + 2kX) + y*lcm(...) solves the system."""
    spec = prime_search_spec(x, m)
    X = spec.X
    entries = {}   # p -> (i, modulus *_p) for every family containing p
    for i, fam in ((1, spec.P1), (2, spec.P2), (3, spec.P3)):
        for p in fam:
            mod = {1: 2 * p ** (valuation(p, X) + 1), 2: 4 * p, 3: 6 * p}[i]
            entries.setdefault(p, []).append((i, mod))
    ks = {}
    for p, fams in entries.items():
        best = None
        for i, mod in fams:
            if X % p == 0:
                kp, per = 1, i * p
            else:
                per = i * p
                kp = None
                for cand in range(1, per):
                    v = 1 + cand * 2 * X
                    if v % mod not in (1, mod - 1) and v % p:
                        kp = cand
                        break
                if kp is None:
                    raise AssertionError("no k_p for p=%d" % p)
            if best is None or kp < best[0]:
                best = (kp, per)
        ks[p] = best
    # the k_p all need to hold simultaneously for every family of p
    congr = []
    for p, (kp, per) in ks.items():
        congr.append((kp % per, per))
    k, mod = _crt_general(congr)
    if mod == 1:
        k = 1
    full = lcm_list([2 * X] + list(spec.moduli))
    return k, mod, 1 + 2 * k * X, full


def _crt_general(congr):
    # moduli i*p are not always coprime (2*3 and 3*2); merge by prime powers
    parts = {}
    for r, mod in congr:
        for p, e in factor(mod).items():
            pe = p**e
            old = parts.get(p)
            if old is None or old[1] < pe:
                parts[p] = (r % pe, pe)
    return crt_solve(list(parts.values()))


# --- element orders of PSL(2,q) ------------------------------------------------------

def psl2_best_divisor(m, q):
    """Largest divisor of m that is an element order of PSL(2,q), q odd: the
    orders are the divisors of (q-1)/2, of (q+1)/2, and ell."""
    ell = prime_power_split(q)[0]
    return max(gcd(m, (q - 1) // 2), gcd(m, (q + 1) // 2), ell if m % ell == 0 else 1)


def psl2_entrywise_factor(cones, q):
    """Entrywise best factor: every factor realizable in a subgroup of
    PSL(2,q) has chi at least that of this one."""
    return tuple(psl2_best_divisor(m, q) for m in cones)


def find_q_direct(target, winner_cones, loser_cones, cap=DEFAULT_SCAN_CAP, genus=0,
                  punctures=0, loser_genus=0, loser_punctures=0):
    """Smallest odd prime power q where the loser's entrywise best has
    strictly larger chi than the winner's.  With a target the winner's
    entrywise best must equal it; with target None any entrywise best does,
    as long as Macbeath realizes its entries > 1 on a hyperbolic triangle or
    polygon.  Used when the incongruence system has no solution: it asks for
    the element-order pattern directly, without the congruence on q."""
    for q in odd_prime_powers():
        if q > cap:
            raise BoundExceeded(cap)
        c = psl2_entrywise_factor(winner_cones, q)
        if target is not None:
            if c != tuple(target):
                continue
        elif not entrywise_realizable(c, q):
            continue
        d = psl2_entrywise_factor(loser_cones, q)
        if cone_chi(d, loser_genus, loser_punctures) > cone_chi(c, genus, punctures):
            return q


def entrywise_realizable(c, q):
    """Macbeath applies to the entries > 1 of c (at least three, hyperbolic)."""
    stripped = tuple(v for v in c if v > 1)
    return len(stripped) >= 3 and cone_chi(stripped) < 0 and macbeath_admits(stripped, q)


# --- maximal smoothness -----------------------------------------------------------

def candidate_profiles(s, G):
    """All c | cones (index-wise) with every c_i an element order of G,
    ascending by chi then lexicographically."""
    orders = set(G.order_set())
    choices = [[d for d in divisors(m) if d in orders] for m in s.cones]
    out = []
    for c in product(*choices):
        out.append((cone_chi(c, s.genus, s.punctures), c))
    out.sort()
    return [c for _, c in out]


def maximal_smoothness(G, s, return_witness=False):
    """Brute force: first realizable profile in ascending chi order."""
    for c in candidate_profiles(s, G):
        h = find_epimorphism(s, G, c)
        if h is not None:
            f = Factor(tuple(s.cones), tuple(c))
            return (f, h) if return_witness else f
    raise NotAQuotient("%s has no epimorphism onto %r" % (s, G))


def realizable_profiles(G, s):
    return [c for c in candidate_profiles(s, G) if find_epimorphism(s, G, c) is not None]


def analytic_maximal_factor(x):
    """For PSL(2,q) with q from find_q(x, m): the maximal factor is closure(x)."""
    return closure(x)


# --- kernels ----------------------------------------------------------------------

def kernel_signature(s, G_order, parabolic_orders=None, elliptic_orders=None):
    """Signature of the kernel of a map onto a group of order |G| in which the
    standard parabolic / elliptic generators have the given image orders."""
    cones = tuple(s.cones)
    c = tuple(elliptic_orders) if elliptic_orders is not None else cones
    d = tuple(parabolic_orders) if parabolic_orders is not None else (1,) * s.punctures
    if len(c) != len(cones) or any(m % ci for m, ci in zip(cones, c)):
        raise InconsistentInput("elliptic orders must divide the cones")
    if len(d) != s.punctures or any(x < 1 or G_order % x for x in d):
        raise InconsistentInput("bad parabolic orders")
    if any(G_order % ci for ci in c):
        raise InconsistentInput("elliptic orders must divide |G|")
    p_new = sum(G_order // x for x in d)
    new_cones = []
    for m, ci in zip(cones, c):
        if m // ci > 1:
            new_cones += [m // ci] * (G_order // ci)
    chi_bare = G_order * cone_chi(c, s.genus, s.punctures)
    two_g = 2 - p_new - chi_bare
    if two_g.denominator != 1 or two_g < 0 or two_g % 2:
        raise InconsistentInput("non-integral kernel genus")
    g_new = int(two_g) // 2
    return Signature(g_new, p_new, tuple(sorted(new_cones)))
