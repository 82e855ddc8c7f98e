"""Concrete finite groups (trivial, cyclic, dihedral, A4, PSL(2,q)) as indexed
multiplication tables, plus brute-force homomorphism and epimorphism search."""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import prime_power_split

TABLE_LIMIT = 2500          # largest group we tabulate and search exhaustively
MATERIALIZE_LIMIT = 10**5   # largest PSL(2,q) we ever list element by element


class CapacityError(RuntimeError):
    pass


class NotAQuotient(ValueError):
    pass


# --- finite fields F_q, q = ell^e, e <= 3 ------------------------------------

def _poly_irreducible(coeffs, p):
    # monic of degree <= 3: irreducible iff no roots in F_p
    for x in range(p):
        v = 1
        for c in reversed(coeffs):
            v = (v * x + c) % p
        if v == 0:
            return False
    return True


def least_irreducible(p, e):
    """Lexicographically least monic irreducible of degree e over F_p, as
    low-order coefficients (c_0, ..., c_{e-1})."""
    if e == 1:
        return (0,)
    if e > 3:
        raise ValueError("field degree > 3 not supported")
    for code in range(p**e):
        coeffs, c = [], code
        for _ in range(e):
            coeffs.append(c % p)
            c //= p
        # search order: by (c_{e-1}, ..., c_0)
        coeffs = coeffs[::-1]
        if _poly_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")


@dataclass
class Field:
    q: int
    p: int
    e: int
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray   # inv[0] = 0 by convention


@lru_cache(maxsize=None)
def finite_field(q):
    split = prime_power_split(q)
    if split is None:
        raise ValueError("%d is not a prime power" % q)
    p, e = split
    if e > 3:
        raise ValueError("only q = ell^e with e <= 3 supported")
    idx = np.arange(q)
    if e == 1:
        add = (idx[:, None] + idx[None, :]) % p
        mul = (idx[:, None] * idx[None, :]) % p
    else:
        poly = least_irreducible(p, e)
        digits = np.array([[(a // p**i) % p for i in range(e)] for a in range(q)])
        weights = p ** np.arange(e)
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(q):
                prod_ = [0] * (2 * e - 1)
                for i in range(e):
                    for j in range(e):
                        prod_[i + j] += digits[a][i] * digits[b][j]
                # reduce with x^e = -sum c_i x^i
                for d in range(2 * e - 2, e - 1, -1):
                    c = prod_[d] % p
                    prod_[d] = 0
                    for i in range(e):
                        prod_[d - e + i] -= c * poly[i]
                mul[a, b] = sum((prod_[i] % p) * p**i for i in range(e))
    neg = np.array([int(np.where(add[a] == 0)[0][0]) for a in range(q)])
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        inv[a] = int(np.where(mul[a] == 1)[0][0])
    return Field(q, p, e, add.astype(np.int64), mul.astype(np.int64), neg, inv)


# --- indexed groups ------------------------------------------------------------

class FiniteGroup:
    """Elements 0..n-1 with 0 the identity and a full multiplication table."""

    def __init__(self, kind, param, elements, table):
        self.kind = kind
        self.param = param
        self.elements = elements
        self.n = len(elements)
        self.table = table                  # numpy (n, n) int array
        self._rows = table.tolist()
        self.inv = [row.index(0) for row in self._rows]
        self.orders = self._compute_orders()
        self._classes = None

    def __repr__(self):
        return "FiniteGroup(%s %s, order %d)" % (self.kind, self.param, self.n)

    def descriptor(self):
        return {"kind": self.kind, "q_or_n": self.param, "order": self.n}

    def mul(self, i, j):
        return self._rows[i][j]

    def _compute_orders(self):
        out = []
        for i in range(self.n):
            k, x = 1, i
            while x != 0:
                x = self._rows[x][i]
                k += 1
            out.append(k)
        return out

    def element_order(self, i):
        return self.orders[i]

    def order_set(self):
        return sorted(set(self.orders))

    def power(self, i, k):
        k %= self.orders[i]
        x = 0
        for _ in range(k):
            x = self._rows[x][i]
        return x

    def conjugacy_classes(self):
        if self._classes is None:
            seen = [-1] * self.n
            classes = []
            for x in range(self.n):
                if seen[x] >= 0:
                    continue
                cls = set()
                for g in range(self.n):
                    cls.add(self._rows[self._rows[g][x]][self.inv[g]])
                for y in cls:
                    seen[y] = len(classes)
                classes.append(sorted(cls))
            self._classes = classes
            self.class_of = seen
        return self._classes

    def generated_subgroup(self, gens):
        """Closure of a set of elements under multiplication."""
        seen = {0}
        frontier = [0]
        gens = [g for g in set(gens) if g != 0]
        while frontier:
            nxt = []
            for x in frontier:
                row = self._rows[x]
                for g in gens:
                    y = row[g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
            if len(seen) > self.n:
                raise AssertionError("closure larger than ambient group")
        return seen

    def generates(self, gens):
        return len(self.generated_subgroup(gens)) == self.n


def _group_from_mul(kind, param, elements, mul):
    index = {x: i for i, x in enumerate(elements)}
    table = np.array([[index[mul(x, y)] for y in elements] for x in elements], dtype=np.int64)
    return FiniteGroup(kind, param, elements, table)


@lru_cache(maxsize=None)
def trivial_group():
    return FiniteGroup("trivial", 1, [()], np.zeros((1, 1), dtype=np.int64))


@lru_cache(maxsize=None)
def cyclic_group(n):
    return _group_from_mul("cyclic", n, list(range(n)), lambda a, b: (a + b) % n)


def dihedral_mul(n):
    def mul(x, y):
        (i, e), (j, f) = x, y
        return ((i + (j if e == 0 else -j)) % n, e ^ f)
    return mul


@lru_cache(maxsize=None)
def dihedral_group(n):
    """D_{2n} = <r, s | r^n = s^2 = 1, s r s = r^-1>, elements (rotation, reflected)."""
    elements = [(i, e) for e in (0, 1) for i in range(n)]
    return _group_from_mul("dihedral", 2 * n, elements, dihedral_mul(n))


@lru_cache(maxsize=None)
def alternating_group_4():
    from itertools import permutations

    def sign(p):
        s, seen = 1, set()
        for i in range(4):
            if i in seen:
                continue
            j, length = i, 0
            while j not in seen:
                seen.add(j)
                j = p[j]
                length += 1
            s *= (-1) ** (length - 1)
        return s

    perms = sorted(p for p in permutations(range(4)) if sign(p) == 1)
    perms.remove((0, 1, 2, 3))
    elements = [(0, 1, 2, 3)] + perms
    # (x*y)(i) = x(y(i)): apply y first
    return _group_from_mul("a4", 12, elements, lambda x, y: tuple(x[y[i]] for i in range(4)))


def psl2_order(q):
    return q * (q * q - 1) // 2 if q % 2 else q * (q * q - 1)


def _psl2_elements(F):
    q = F.q
    seen = set()
    out = []
    for a in range(q):
        for b in range(q):
            for c in range(q):
                if a:
                    d = F.mul[F.add[1, F.mul[b, c]], F.inv[a]]
                    cands = [(a, b, c, int(d))]
                elif b:
                    cc = F.neg[F.inv[b]]
                    if c != cc:
                        continue
                    cands = [(a, b, c, d) for d in range(q)]
                else:
                    continue
                for m in cands:
                    key = _canon(F, m)
                    if key not in seen:
                        seen.add(key)
                        out.append(key)
    return out


def _canon(F, m):
    n = tuple(int(F.neg[x]) for x in m)
    return min(tuple(int(x) for x in m), n)


@lru_cache(maxsize=None)
def psl2_group(q):
    if q % 2 == 0:
        raise ValueError("only odd q supported")
    if psl2_order(q) > TABLE_LIMIT:
        raise CapacityError("PSL(2,%d) has order %d > %d; too large to tabulate"
                            % (q, psl2_order(q), TABLE_LIMIT))
    F = finite_field(q)
    elems = _psl2_elements(F)
    ident = _canon(F, (1, 0, 0, 1))
    elems.remove(ident)
    elems = [ident] + sorted(elems)
    n = len(elems)
    E = np.array(elems, dtype=np.int64)
    keys = ((E[:, 0] * q + E[:, 1]) * q + E[:, 2]) * q + E[:, 3]
    lookup = np.full(q**4, -1, dtype=np.int64)
    lookup[keys] = np.arange(n)
    add, mul, neg = F.add, F.mul, F.neg
    table = np.empty((n, n), dtype=np.int64)
    B0, B1, B2, B3 = E[:, 0], E[:, 1], E[:, 2], E[:, 3]
    for i in range(n):
        a, b, c, d = elems[i]
        C = np.stack([add[mul[a, B0], mul[b, B2]], add[mul[a, B1], mul[b, B3]],
                      add[mul[c, B0], mul[d, B2]], add[mul[c, B1], mul[d, B3]]], axis=1)
        N = neg[C]
        k1 = ((C[:, 0] * q + C[:, 1]) * q + C[:, 2]) * q + C[:, 3]
        k2 = ((N[:, 0] * q + N[:, 1]) * q + N[:, 2]) * q + N[:, 3]
        table[i] = lookup[np.minimum(k1, k2)]
    G = FiniteGroup("psl2", q, elems, table)
    G.field = F
    return G


def psl2_element_order_census(q):
    """Element orders predicted for PSL(2,q), q = ell^e odd."""
    ell, _ = prime_power_split(q)
    out = {1, 2, 3, ell}
    for h in ((q - 1) // 2, (q + 1) // 2):
        out.update(d for d in range(1, h + 1) if h % d == 0)
    return sorted(out)


def group_from_descriptor(text):
    """`trivial`, `cyclic:n`, `dihedral:2n`, `a4`, `psl2:q`."""
    kind, _, arg = text.partition(":")
    kind = kind.strip().lower()
    if kind == "trivial":
        return trivial_group()
    if kind == "a4":
        return alternating_group_4()
    if not arg:
        raise ValueError("group descriptor %r needs a parameter" % text)
    n = int(arg)
    if kind == "cyclic":
        return cyclic_group(n)
    if kind == "dihedral":
        if n % 2:
            raise ValueError("dihedral order must be even")
        return dihedral_group(n // 2)
    if kind == "psl2":
        return psl2_group(n)
    raise ValueError("unknown group kind %r" % kind)


# --- homomorphism search -------------------------------------------------------

@dataclass(frozen=True)
class Homomorphism:
    """Images of a1,b1,...,ag,bg, x1..xk, y1..yp (indices into the group)."""
    handles: tuple
    elliptic: tuple
    parabolic: tuple

    def images(self):
        return tuple(self.handles) + tuple(self.elliptic) + tuple(self.parabolic)


def _commutator(G, a, b):
    return G.mul(G.mul(a, b), G.mul(G.inv[a], G.inv[b]))


def relation_value(G, hom):
    x = 0
    h = hom.handles
    for i in range(0, len(h), 2):
        x = G.mul(x, _commutator(G, h[i], h[i + 1]))
    for e in hom.elliptic:
        x = G.mul(x, e)
    for y in hom.parabolic:
        x = G.mul(x, y)
    return x


def _search_space(s, G):
    free = 2 * s.genus + s.k + s.punctures - (1 if (s.punctures or s.k) else 0)
    return G.n ** max(free, 0)


def iter_homomorphisms(s, G, profile=None, surjective=True, reduced=True,
                       parabolic_profile=None):
    """Yield (hom, weight) for homomorphisms from the signature group to G.

    Elliptic images have order dividing the cone order (exactly profile[i] if a
    profile is given); parabolic_profile optionally fixes exact orders of the
    parabolic images (None entries are free). With `reduced`, the first free
    generator only runs over conjugacy class representatives and `weight` is
    the class size, so the weighted count is the true count."""
    if G.n > TABLE_LIMIT:
        raise CapacityError("group of order %d exceeds search limit %d" % (G.n, TABLE_LIMIT))
    g, p, cones = s.genus, s.punctures, s.cones
    k = len(cones)
    if profile is not None:
        profile = tuple(profile)
        if len(profile) != k or any(m % c for m, c in zip(cones, profile)):
            raise ValueError("profile %r does not divide cones %r" % (profile, cones))

    if parabolic_profile is not None:
        parabolic_profile = tuple(parabolic_profile)
        if len(parabolic_profile) != p:
            raise ValueError("parabolic profile length must equal the puncture count")

    def parabolic_ok(t, y):
        return parabolic_profile is None or parabolic_profile[t] is None \
            or G.orders[y] == parabolic_profile[t]

    def elliptic_ok(i, x):
        if profile is not None:
            return G.orders[x] == profile[i]
        return cones[i] % G.orders[x] == 0

    by_order = {}
    for x in range(G.n):
        by_order.setdefault(G.orders[x], []).append(x)
    elliptic_cands = []
    for i in range(k):
        if profile is not None:
            elliptic_cands.append(by_order.get(profile[i], []))
        else:
            elliptic_cands.append([x for x in range(G.n) if cones[i] % G.orders[x] == 0])

    # free slots, in relation order; the last x (p = 0) or last y (p > 0) is solved for
    slots = [("h", None)] * (2 * g)
    determined = None
    if p > 0:
        slots += [("x", i) for i in range(k)] + [("y", t) for t in range(p - 1)]
        determined = "y"
    elif k > 0:
        slots += [("x", i) for i in range(k - 1)]
        determined = "x"
    cand_lists = []
    ycount = 0
    for kind, i in slots:
        if kind == "x":
            cand_lists.append(elliptic_cands[i])
        elif kind == "y":
            cand_lists.append([y for y in range(G.n) if parabolic_ok(ycount, y)])
            ycount += 1
        else:
            cand_lists.append(list(range(G.n)))

    classes = G.conjugacy_classes() if reduced and slots else None
    weights = None
    if classes is not None:
        first = set(cand_lists[0])
        reps, weights = [], {}
        for cls in classes:
            if cls[0] in first:
                reps.append(cls[0])
                weights[cls[0]] = len(cls)
        cand_lists[0] = reps

    inv = G.inv
    nslots = len(slots)
    images = [0] * nslots

    def finish():
        handles = tuple(images[:2 * g])
        rest = images[2 * g:]
        if determined == "y":
            ell = tuple(rest[:k])
            par = list(rest[k:])
        else:
            ell = tuple(rest)
            par = []
        hom = Homomorphism(handles, ell, tuple(par))
        val = relation_value(G, hom)
        if determined == "y":
            if not parabolic_ok(p - 1, inv[val]):
                return None
            hom = Homomorphism(handles, ell, tuple(par) + (inv[val],))
        elif determined == "x":
            last = inv[val]
            if not elliptic_ok(k - 1, last):
                return None
            hom = Homomorphism(handles, ell + (last,), ())
        elif val != 0:
            return None
        if surjective and not G.generates(hom.images()):
            return None
        return hom

    def rec(depth):
        if depth == nslots:
            hom = finish()
            if hom is not None:
                w = weights[images[0]] if weights is not None else 1
                yield hom, w
            return
        for x in cand_lists[depth]:
            images[depth] = x
            yield from rec(depth + 1)

    yield from rec(0)


def enumerate_epimorphisms(s, G, order_profile=None, count_only=False, reduced=False):
    """List (or count) surjective homomorphisms from the signature group onto G."""
    if count_only:
        return sum(w for _, w in iter_homomorphisms(s, G, order_profile, True, True))
    return [h for h, _ in iter_homomorphisms(s, G, order_profile, True, reduced)]


def count_homomorphisms(s, G, order_profile=None):
    return sum(w for _, w in iter_homomorphisms(s, G, order_profile, False, True))


def find_epimorphism(s, G, order_profile=None, parabolic_profile=None):
    for h, _ in iter_homomorphisms(s, G, order_profile, True, True, parabolic_profile):
        return h
    return None


def find_homomorphism(s, G, order_profile=None, parabolic_profile=None):
    for h, _ in iter_homomorphisms(s, G, order_profile, False, True, parabolic_profile):
        return h
    return None


def subgroup(G, elems, kind=None):
    """The subgroup on `elems` (closed under multiplication) as its own table."""
    elems = sorted(elems)
    if elems[0] != 0:
        raise ValueError("subgroup must contain the identity")
    pos = {x: i for i, x in enumerate(elems)}
    sub = np.array([[pos[G.mul(x, y)] for y in elems] for x in elems], dtype=np.int64)
    H = FiniteGroup(kind or (G.kind + "-subgroup"), G.param, [G.elements[x] for x in elems], sub)
    H.ambient = G
    H.ambient_index = elems
    return H


def exists_tuple_with_orders(G, orders):
    """Is there x_1..x_k in G with ord(x_i) = orders[i] and x_1...x_k = 1?
    Exhaustive over conjugacy classes (the set of products of elements from
    class unions is again a class union)."""
    classes = G.conjugacy_classes()
    cls_order = [G.orders[c[0]] for c in classes]
    if not orders:
        return True
    if any(o not in cls_order for o in orders):
        return False
    reach = {i for i, o in enumerate(cls_order) if o == orders[0]}
    rows = G._rows
    for o in orders[1:-1]:
        vs = [x for x in range(G.n) if G.orders[x] == o]
        nxt = set()
        for ci in reach:
            u = classes[ci][0]
            row = rows[u]
            for v in vs:
                nxt.add(G.class_of[row[v]])
        reach = nxt
    if len(orders) == 1:
        return orders[0] == 1
    return any(cls_order[ci] == orders[-1] for ci in reach)
