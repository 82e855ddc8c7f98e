"""Acceptance criteria 1-9, one test per criterion (plus strict xfails for
the literal claims that do not hold, see the decision ledger)."""

import random
import time
from fractions import Fraction
from itertools import combinations_with_replacement, permutations, product
from math import prod

import pytest

from fuchsian_quotients.abelianization import abelianize
from fuchsian_quotients.arith import FactoredInteger, divisors
from fuchsian_quotients.distinguisher import (certificate_order, distinguish, extension_rank,
                                              kernel_betti, verify_certificate)
from fuchsian_quotients.finite_groups import (alternating_group_4, exists_tuple_with_orders,
                                              find_epimorphism, psl2_group)
from fuchsian_quotients.scrape_matrices import matrix_check
from fuchsian_quotients.scrapes import (Factor, closure, find_distinguishing_scrape,
                                        find_good_distinguishing_scrape, is_good)
from fuchsian_quotients.signatures import euler_char, is_fuchsian, isomorphic, sig, triangle
from fuchsian_quotients.smooth_reps import (kernel_signature, macbeath_admits, maximal_smoothness,
                                            smooth_dihedral)

from generators import equal_invariant_pairs

criterion = pytest.mark.criterion


def certify(left, right):
    cert = distinguish(left, right)
    rep = verify_certificate(cert, left, right)
    assert rep.ok, str(rep)
    return cert, rep


# --- 1 ------------------------------------------------------------------------------

@criterion(1, "first worked pair: PSL(2,7), a=5, f=48, |Q|=5^48*168, loser b1<=6, <10 s")
def test_criterion_1():
    t = time.time()
    cert, rep = certify(triangle(4, 3, 7), triangle(2, 3, 7))
    assert (cert.base.order, cert.a, cert.f) == (168, 5, 48)
    assert cert.order == FactoredInteger.from_int(5) ** 48 * 168
    assert cert.order.value() == 5**48 * 168
    assert cert.loser_max_factor.values == (2, 3, 7)
    assert kernel_betti(triangle(2, 3, 7), 168, (2, 3, 7)) == 6
    loser = next(c for c in rep.checks if c.name == "loser excluded")
    assert loser.method == "exhaustive search" and "b1=6" in loser.detail
    assert time.time() - t < 10


# --- 2 ------------------------------------------------------------------------------

EX3 = (triangle(2, 3, 3, 315), triangle(15, 18, 21))


@criterion(2, "third worked pair: 12-element base group, f=8, (2,3,3,3) and (3,2,3) realizable, <60 s")
def test_criterion_2():
    t = time.time()
    cert, _ = certify(*EX3)
    assert (cert.winner, cert.base.order, cert.f) == ("left", 12, 8)
    assert cert.order == certificate_order(cert.a, 8, 12)
    A4 = alternating_group_4()
    assert maximal_smoothness(A4, EX3[0]).values == (2, 3, 3, 3)
    assert find_epimorphism(EX3[1], A4, (3, 2, 3)) is not None
    assert time.time() - t < 60


@criterion(2, "literal a=2 and |Q|=3072 (policy gives a=11 since L=630 is even)")
@pytest.mark.xfail(strict=True, reason="extension exponent policy selects a=11")
def test_criterion_2_literal_exponent():
    cert, _ = certify(*EX3)
    assert cert.a == 2 and cert.order.value() == 3072


@criterion(2, "literal loser maximal smoothness (3,2,3) (brute force finds (3,3,3), smaller chi)")
@pytest.mark.xfail(strict=True, reason="(3,3,3) is realizable and has smaller chi")
def test_criterion_2_literal_loser_profile():
    assert maximal_smoothness(alternating_group_4(), EX3[1]).values == (3, 2, 3)


# --- 3 ------------------------------------------------------------------------------

@criterion(3, "second worked pair components: Z3xZ21, chi=-563/630, (5,6,3)/(3,3,6) in PSL(2,11), f=200")
def test_criterion_3():
    t = time.time()
    m, n = triangle(15, 42, 63), triangle(21, 21, 90)
    for s in (m, n):
        ab = abelianize(s)
        assert (ab.free_rank, ab.torsion()) == (0, (3, 21))
    assert euler_char(m) == euler_char(n) == Fraction(-563, 630)
    G = psl2_group(11)
    assert G.n == 660
    assert maximal_smoothness(G, m).values == (5, 6, 3)
    assert maximal_smoothness(G, n).values == (3, 3, 6)
    k = kernel_signature(m, 660, elliptic_orders=(5, 6, 3))
    assert (k.genus, k.punctures) == (100, 0)
    assert k.cones == (3,) * 132 + (7,) * 110 + (21,) * 220
    assert extension_rank(m, 660, (5, 6, 3)) == 200
    order = certificate_order(7, 200, 660)
    assert order.value() == 7**200 * 660
    assert order.decimal_approx() == "6.90e171"
    # the full run under the exponent policy also certifies the pair
    cert, _ = certify(m, n)
    assert cert.a == 11
    assert time.time() - t < 300


# --- 4 ------------------------------------------------------------------------------

@criterion(4, "scrape matrices for every M <= 300: ranks, pivotless columns, X routes, <2 min")
def test_criterion_4():
    t = time.time()
    for M in range(1, 301):
        r = matrix_check(M)
        tau = len(divisors(M))
        assert r.rank_E == tau and r.rank_F_patched == tau, M
        assert list(r.pivotless_Y) == [d for d in (2, 3, 12) if M % d == 0], M
        assert r.x_routes_agree and r.y_routes_agree, M
    assert time.time() - t < 120


# --- 5 ------------------------------------------------------------------------------

MACBEATH_Q = (5, 7, 9, 11, 13)


def macbeath_disagreements():
    out = []
    for q in MACBEATH_Q:
        G = psl2_group(q)
        for k in (3, 4):
            for m in combinations_with_replacement(range(2, 16), k):
                if macbeath_admits(m, q) != exists_tuple_with_orders(G, m):
                    out.append((q, m))
    return out


@criterion(5, "Macbeath vs brute force, q in {5,7,9,11,13}, 3<=|m|<=4, entries<=15: "
              "hyperbolic m agree, <10 min")
def test_criterion_5():
    t = time.time()
    dis = macbeath_disagreements()
    assert all(sum(1 - 1 / x for x in m) <= 2 for _, m in dis)   # only spherical m
    assert dis == [(7, (2, 2, 7)), (11, (2, 2, 11))]
    assert time.time() - t < 600


@criterion(5, "literal zero disagreements including spherical m")
@pytest.mark.xfail(strict=True, reason="dihedral (2,2,ell) images are missing in PSL(2,ell)")
def test_criterion_5_literal():
    assert macbeath_disagreements() == []


# --- 6 ------------------------------------------------------------------------------

@criterion(6, "dihedral witness for every m with k<=4, entries<=12")
def test_criterion_6():
    n = 0
    for k in range(1, 5):
        for m in combinations_with_replacement(range(2, 13), k):
            rep = smooth_dihedral(m)
            assert rep.check(), m
            assert tuple(e.order() for e in rep.elliptic) == m
            n += 1
    assert n == 11 + 66 + 286 + 1001


# --- 7 ------------------------------------------------------------------------------

@criterion(7, "200 equal-invariant pairs: distinguishing scrapes and good distinguishing scrapes")
def test_criterion_7():
    pairs = equal_invariant_pairs(2024, 200)
    assert len(pairs) == 200
    good = 0
    for m, n in pairs:
        s = find_distinguishing_scrape(m, n)
        assert s is not None
        if len(m) >= 3 and is_good(m) and is_good(n):
            gs = find_good_distinguishing_scrape(m, n)
            assert gs.left.chi() != gs.right.chi() or is_good(gs.left.values) != is_good(gs.right.values)
            good += 1
    assert good > 0


# --- 8 ------------------------------------------------------------------------------

def delta_epsilon_cases(primes, i_max=2, b_max=3):
    for g, h, l in permutations(primes, 3):
        for i in range(i_max + 1):
            for b in range(1, b_max + 1):
                for j in range(b):
                    for d in product((0, 1), repeat=4):
                        if d[2] != 1:
                            continue
                        for e in product((0, 1), repeat=4):
                            if sum(d) != sum(e):
                                continue
                            mv = (l**d[0] * g**i * h**j, l**d[1] * g**(i + 1) * h**b, l**d[2], l**d[3])
                            nv = (l**e[0] * g**i * h**b, l**e[1] * g**(i + 1) * h**j, l**e[2], l**e[3])
                            yield (g, h, l), mv, nv


def parent_multipliers(ghl):
    # a parent entry may carry extra factors 2 or 3 only off the primes g, h, ell
    free = [p for p in (2, 3) if p not in ghl]
    return sorted({prod(c) for c in product(*[(1, p) for p in free])})


@criterion(8, "delta/epsilon sweep: closure-chi difference never zero")
def test_criterion_8():
    n = 0
    # exhaustive over primes {2,3,5,7}, the same extra 2/3 parts on both sides
    for ghl, mv, nv in delta_epsilon_cases((2, 3, 5, 7)):
        for w in product(parent_multipliers(ghl), repeat=4):
            pm = tuple(x * u for x, u in zip(mv, w))
            pn = tuple(x * u for x, u in zip(nv, w))
            assert closure(Factor(pm, mv)).chi() != closure(Factor(pn, nv)).chi(), (ghl, mv, nv, w)
            n += 1
    # sampled over larger primes, independent extra parts
    rng = random.Random(8)
    cases = list(delta_epsilon_cases((2, 3, 5, 7, 11, 13)))
    for ghl, mv, nv in rng.sample(cases, 20000):
        mult = parent_multipliers(ghl)
        pm = tuple(x * rng.choice(mult) for x in mv)
        pn = tuple(x * rng.choice(mult) for x in nv)
        assert closure(Factor(pm, mv)).chi() != closure(Factor(pn, nv)).chi(), (ghl, mv, nv)
        n += 1
    assert n > 100000


# --- 9 ------------------------------------------------------------------------------

def random_fuchsian_pairs(seed, count):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        sides = []
        for _ in range(2):
            g, p = rng.randint(0, 2), rng.randint(0, 2)
            cones = tuple(rng.randint(2, 30) for _ in range(rng.randint(1, 4)))
            sides.append(sig(g, p, cones))
        a, b = sides
        if is_fuchsian(a) and is_fuchsian(b) and not isomorphic(a, b):
            out.append((a, b))
    return out


@criterion(9, "bound (L+1)^(15+L^(15(b+k))) holds for the worked pairs and 100 random pairs")
def test_criterion_9():
    pairs = [(triangle(4, 3, 7), triangle(2, 3, 7)), EX3,
             (triangle(15, 42, 63), triangle(21, 21, 90))]
    pairs += random_fuchsian_pairs(9, 100)
    for a, b in pairs:
        cert, _ = certify(a, b)
        assert cert.bound_ok, (a, b)


@criterion(9, "bound also for pairs without cones (L=1)")
@pytest.mark.xfail(strict=True, reason="with L=1 the bound is 2^16 while |Q| grows with b")
def test_criterion_9_without_cones():
    cert, _ = certify(sig(2, 0), sig(0, 5))
    assert cert.bound_ok
