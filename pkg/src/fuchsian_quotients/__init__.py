"""Distinguishing finite quotients of Fuchsian groups: signatures, abelian
invariants, scrapes, finite group searches and quotient certificates."""

from .signatures import Signature, euler_char, first_betti, normalize, parse_signature, sig, triangle
from .distinguisher import distinguish, verify_certificate

__all__ = ["Signature", "distinguish", "euler_char", "first_betti", "normalize",
           "parse_signature", "sig", "triangle", "verify_certificate"]
