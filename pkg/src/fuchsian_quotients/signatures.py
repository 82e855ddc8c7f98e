"""Fuchsian signatures (g; p; m): normal form, Euler characteristic, Betti number."""

from dataclasses import dataclass
from fractions import Fraction
import math
import re

from .arith import lcm_list

INF = math.inf


class SignatureParseError(ValueError):
    def __init__(self, msg, offset):
        super().__init__("%s (at byte %d)" % (msg, offset))
        self.offset = offset


@dataclass(frozen=True)
class Signature:
    genus: int
    punctures: int
    cones: tuple = ()

    def __post_init__(self):
        if self.genus < 0 or self.punctures < 0:
            raise ValueError("genus and punctures must be non-negative")
        for m in self.cones:
            if m != INF and (not isinstance(m, int) or m < 1):
                raise ValueError("cone orders must be positive integers or inf, got %r" % (m,))

    @property
    def k(self):
        return len(self.cones)

    def is_normal(self):
        return self == normalize(self)

    def cone_lcm(self):
        return lcm_list(list(self.cones))

    def __str__(self):
        return format_signature(self)


def normalize(s):
    """Drop 1-cones, turn inf-cones into punctures, fold genus into punctures
    when punctured, sort cones."""
    cones = [m for m in s.cones if m != 1]
    extra = sum(1 for m in cones if m == INF)
    cones = sorted(m for m in cones if m != INF)
    g, p = s.genus, s.punctures + extra
    if p > 0:
        g, p = 0, 2 * g + p
    return Signature(g, p, tuple(cones))


def sig(g, p, cones=()):
    return normalize(Signature(g, p, tuple(cones)))


def triangle(*cones):
    """The group Delta(m) = (0; 0; m)."""
    return sig(0, 0, cones)


def euler_char(s):
    """2 - 2g - p - sum(1 - 1/m_i), exact."""
    chi = Fraction(2 - 2 * s.genus - s.punctures)
    for m in s.cones:
        chi -= 1 if m == INF else 1 - Fraction(1, m)
    return chi


def cone_chi(cones, genus=0, punctures=0):
    """Euler characteristic of a bare multiset of orders (entries of 1 allowed)."""
    chi = Fraction(2 - 2 * genus - punctures)
    for m in cones:
        chi -= 1 - Fraction(1, m)
    return chi


def first_betti(s):
    if s.punctures > 0:
        return 2 * s.genus + s.punctures - 1
    return 2 * s.genus


def is_fuchsian(s):
    return euler_char(s) < 0


def isomorphic(a, b):
    return normalize(a) == normalize(b)


def is_punctured(s):
    return s.punctures > 0


# --- text form -------------------------------------------------------------

_INT = re.compile(r"[0-9]+")


def parse_signature(text):
    """Parse `(<g>;<p>;<m1>,<m2>,...)` (use `-` for no cones, `inf` for a
    puncture-like cone) and return the normalized signature."""
    pos = 0
    n = len(text)

    def expect(ch):
        nonlocal pos
        if pos >= n or text[pos] != ch:
            got = text[pos] if pos < n else "end of input"
            raise SignatureParseError("expected %r, got %r" % (ch, got), pos)
        pos += 1

    def integer():
        nonlocal pos
        m = _INT.match(text, pos)
        if not m:
            raise SignatureParseError("expected a non-negative integer", pos)
        pos = m.end()
        return int(m.group())

    expect("(")
    g = integer()
    expect(";")
    p = integer()
    expect(";")
    cones = []
    if text.startswith("-", pos):
        pos += 1
    elif text.startswith(")", pos):
        raise SignatureParseError("empty cone list, write '-' for no cones", pos)
    else:
        while True:
            if text.startswith("inf", pos):
                cones.append(INF)
                pos += 3
            else:
                start = pos
                v = integer()
                if v < 1:
                    raise SignatureParseError("cone orders must be >= 1", start)
                cones.append(v)
            if pos < n and text[pos] == ",":
                pos += 1
                continue
            break
    expect(")")
    if pos != n:
        raise SignatureParseError("trailing characters", pos)
    return normalize(Signature(g, p, tuple(cones)))


def format_signature(s):
    if s.cones:
        body = ",".join("inf" if m == INF else str(m) for m in s.cones)
    else:
        body = "-"
    return "(%d;%d;%s)" % (s.genus, s.punctures, body)
