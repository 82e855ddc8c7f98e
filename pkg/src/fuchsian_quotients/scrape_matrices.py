"""Exact matrices E, X, F, Y behind the distinguishing-scrape theorems, and the
checks of their rank and pivot structure.

Rows are indexed by s | M, columns by d | M, both in ascending order.  The
entries are the coefficients of Delta_d (the multiplicity difference of d in
two multisets) in chi(m_s) - chi(n_s) (for E) or in the closed version (for F).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from itertools import product

from .arith import divisors, factor, moebius, totient, valuation
from .scrapes import close_entry


@dataclass(frozen=True)
class ScrapeMatrix:
    modulus: int
    index: tuple                  # ascending divisors of M (the columns)
    entries: tuple                # tuple of rows, each a tuple of Fractions
    row_labels: tuple = field(default=None)

    def __post_init__(self):
        if self.row_labels is None:
            object.__setattr__(self, "row_labels", self.index)

    def entry(self, s, d):
        return self.entries[self.row_labels.index(s)][self.index.index(d)]

    def row(self, s):
        return self.entries[self.row_labels.index(s)]

    def is_square(self):
        return len(self.entries) == len(self.index)

    def __eq__(self, other):
        return (isinstance(other, ScrapeMatrix) and self.modulus == other.modulus
                and self.index == other.index and self.entries == other.entries
                and self.row_labels == other.row_labels)

    def __hash__(self):
        return hash((self.modulus, self.entries))


def _square(M, fn):
    idx = tuple(divisors(M))
    return ScrapeMatrix(M, idx, tuple(tuple(Fraction(fn(s, d)) for d in idx) for s in idx))


def pivot_of(s, M):
    """s~ : exponent j of p in s becomes a - j + 1 (p^a || M); primes not
    dividing s stay out, so 1~ = 1."""
    if s < 1 or M % s:
        raise ValueError("%d does not divide %d" % (s, M))
    out = 1
    for p, j in factor(s).items():
        out *= p ** (valuation(p, M) - j + 1)
    return out


def build_E(M):
    return _square(M, lambda s, d: Fraction(1, gcd(d, M // s)))


def build_F(M):
    return _square(M, lambda s, d: Fraction(1, close_entry(gcd(d, M // s), d)))


def build_X(M, route="closed"):
    """route: "closed" (totient formula), "moebius" (sum over c | s) or
    "recursive" (row operations on E)."""
    if route == "closed":
        def x(s, d):
            if d % pivot_of(s, M):
                return 0
            return Fraction(totient(d // gcd(d, M // s)), d)
        return _square(M, x)
    if route == "moebius":
        return _moebius_rows(M, lambda c, d: Fraction(1, gcd(d, M // c)))
    if route == "recursive":
        return _recursive_rows(build_E(M))
    raise ValueError("unknown route %r" % route)


def _moebius_rows(M, g):
    return _square(M, lambda s, d: sum((moebius(s // c) * g(c, d) for c in divisors(s)),
                                       Fraction(0)))


def _recursive_rows(A):
    """Row s becomes A_s minus the sum of already transformed rows c | s, c != s."""
    idx = A.index
    out = {}
    for i, s in enumerate(idx):
        row = list(A.entries[i])
        for c in idx[:i]:
            if s % c == 0:
                row = [a - b for a, b in zip(row, out[c])]
        out[s] = tuple(row)
    return ScrapeMatrix(A.modulus, idx, tuple(out[s] for s in idx))


def correction(s, d, M):
    """x_{s,d} - y_{s,d} from the five-row table (0 outside it)."""
    a, b = valuation(2, M), valuation(3, M)
    big_s = {p: e for p, e in factor(s).items() if p > 3}
    big_d = {p for p in factor(d) if p > 3}
    # the primes > 3 of s appear to full power and are exactly those of d
    if set(big_s) != big_d or any(e != valuation(p, M) for p, e in big_s.items()):
        return Fraction(0)
    s2, s3, d2, d3 = valuation(2, s), valuation(3, s), valuation(2, d), valuation(3, d)
    if a >= 1 and s2 == a and s3 == 0 and d2 >= 1 and d3 == 0:
        return Fraction(1, 2)
    if b >= 1 and s3 == b and s2 == 0 and d3 >= 1 and d2 == 0:
        return Fraction(2, 3)
    if a >= 2 and b >= 1 and s2 == a - 1 and s3 == b and d2 >= 2 and d3 >= 1:
        return Fraction(1, 6)
    if b >= 1 and s2 == 0 and s3 == b and d2 == 1 and d3 >= 1:
        return Fraction(1, 6)
    if a >= 1 and b >= 1 and s2 == a and s3 == b and d2 >= 1 and d3 >= 1:
        return Fraction(1, 2)
    return Fraction(0)


def build_Y(M, route="table"):
    """route: "table" (X minus the correction table), "moebius" (sum over
    F-entries) or "recursive" (row operations on F)."""
    if route == "table":
        X = build_X(M)
        return _square(M, lambda s, d: X.entry(s, d) - correction(s, d, M))
    if route == "moebius":
        return _moebius_rows(M, lambda c, d: Fraction(1, close_entry(gcd(d, M // c), d)))
    if route == "recursive":
        return _recursive_rows(build_F(M))
    raise ValueError("unknown route %r" % route)


def patch_rows(M):
    """The extra equations: sum over 2 || d, sum over 3 || d, sum over all d.
    Each is present only when its column (2, 3, 12) divides M."""
    idx = tuple(divisors(M))
    rows = []
    if M % 2 == 0:
        rows.append(("2~", tuple(Fraction(int(valuation(2, d) == 1)) for d in idx)))
    if M % 3 == 0:
        rows.append(("3~", tuple(Fraction(int(valuation(3, d) == 1)) for d in idx)))
    if M % 12 == 0:
        rows.append(("12~", tuple(Fraction(1) for _ in idx)))
    return rows


def append_patch_rows(A, M=None):
    M = A.modulus if M is None else M
    extra = patch_rows(M)
    return ScrapeMatrix(A.modulus, A.index, A.entries + tuple(r for _, r in extra),
                        tuple(A.row_labels) + tuple(lab for lab, _ in extra))


def rank(rows):
    """Exact rank by Gaussian elimination over the rationals."""
    if isinstance(rows, ScrapeMatrix):
        rows = rows.entries
    work = [[Fraction(x) for x in r] for r in rows]
    if not work:
        return 0
    ncols = len(work[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        pr = work[r]
        for i in range(r + 1, len(work)):
            if work[i][c] != 0:
                f = work[i][c] / pr[c]
                work[i] = [x - f * y for x, y in zip(work[i], pr)]
        r += 1
        if r == len(work):
            break
    return r


def pivotless_columns(A):
    """Columns d whose designated pivot entry (row d~, column d) vanishes."""
    M = A.modulus
    return [d for d in A.index if A.entry(pivot_of(d, M), d) == 0]


def is_upper_triangular_after_pivot_permutation(A):
    """Row d~ is zero in every column d' < d."""
    M = A.modulus
    for d in A.index:
        row = A.row(pivot_of(d, M))
        for d2 in A.index:
            if d2 >= d:
                break
            if row[A.index.index(d2)] != 0:
                return False
    return True


def reduce_twelve_row(M):
    """Row-reduce the appended all-ones row against the rows j~ (j | M, j < 12,
    rows 2~ and 3~ replaced by their patches) on the columns d <= 12; return
    the resulting entry in column 12."""
    if M % 12:
        raise ValueError("12 must divide M")
    Y = build_Y(M)
    D = [d for d in divisors(M) if d <= 12]
    patches = dict(patch_rows(M))
    cols = [Y.index.index(d) for d in D]

    def restricted(row):
        return [row[c] for c in cols]

    current = [Fraction(1)] * len(D)
    for pos, j in enumerate(D):
        if j == 12:
            break
        if j in (2, 3):
            piv_row = restricted(patches["%d~" % j])
        else:
            piv_row = restricted(Y.row(pivot_of(j, M)))
        if piv_row[pos] == 0:
            raise AssertionError("row %d~ has no pivot in column %d" % (j, j))
        if current[pos] != 0:
            f = current[pos] / piv_row[pos]
            current = [x - f * y for x, y in zip(current, piv_row)]
    return current[D.index(12)]


def twelve_pivot_family():
    """One modulus for each divisibility pattern of {1..12} with 12 | M:
    v2 in {2, >=3}, v3 in {1, >=2}, and 5, 7, 11 each present or not."""
    out = []
    for a, b, e5, e7, e11 in product((2, 3), (1, 2), (0, 1), (0, 1), (0, 1)):
        out.append(2**a * 3**b * 5**e5 * 7**e7 * 11**e11)
    return out


@dataclass(frozen=True)
class MatrixReport:
    modulus: int
    tau: int
    rank_E: int
    rank_X: int
    rank_F: int
    rank_F_patched: int
    pivotless_Y: tuple
    x_routes_agree: bool
    y_routes_agree: bool

    def ok(self):
        expected = tuple(d for d in (2, 3, 12) if self.modulus % d == 0)
        return (self.rank_E == self.tau and self.rank_X == self.tau
                and self.rank_F_patched == self.tau and self.pivotless_Y == expected
                and self.x_routes_agree and self.y_routes_agree)


def matrix_check(M):
    E, F = build_E(M), build_F(M)
    X = build_X(M)
    Y = build_Y(M)
    x_ok = X == build_X(M, "moebius") == build_X(M, "recursive")
    y_ok = Y == build_Y(M, "moebius") == build_Y(M, "recursive")
    return MatrixReport(M, len(E.index), rank(E), rank(X), rank(F),
                        rank(append_patch_rows(F)), tuple(pivotless_columns(Y)), x_ok, y_ok)
