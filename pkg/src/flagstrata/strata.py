"""The invariants c1, c2, c3 and the four strata O, LC1, LC2, C of the flag variety.

c1 = (v1, v1), c2 = (v1, v1)(v2, v2) - (v1, v2)^2 and c3 = (v1, v2) are read off
any SL_3 representative.  Their vanishing pattern is unchanged by
g -> k g b (k in SO(3), b in B_std), and over a field it sorts every flag
into exactly one stratum.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .exactfield import FieldElement, elements
from .flagvariety import Flag, ProjPoint, flag_from_matrix
from .mat3 import K3, Mat3, Vec3, bilinear, inverse3


class Stratum(str, Enum):
    O = "O"
    LC1 = "LC1"
    LC2 = "LC2"
    C = "C"

    def __str__(self):
        return self.value


class LineStratum(str, Enum):
    Oprime = "O'"
    Cprime = "C'"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class CInvariants:
    c1: FieldElement
    c2: FieldElement
    c3: FieldElement

    def as_strings(self) -> list[str]:
        return [str(self.c1), str(self.c2), str(self.c3)]


def c_of_matrix(g: Mat3) -> CInvariants:
    v1, v2 = g.col(0), g.col(1)
    a, b, c = bilinear(v1, v1), bilinear(v1, v2), bilinear(v2, v2)
    return CInvariants(a, a * c - b * b, b)


def c_invariants(f: Flag) -> CInvariants:
    return c_of_matrix(f.rep)


def stratum_of(c: CInvariants) -> Stratum:
    if not c.c1.is_zero():
        return Stratum.LC2 if c.c2.is_zero() else Stratum.O
    return Stratum.C if c.c3.is_zero() else Stratum.LC1


def classify_flag(f: Flag) -> Stratum:
    return stratum_of(c_invariants(f))


# Each stratum's defining condition on (c1, c2, c3), evaluated separately so a
# partition check can count how many hold.
STRATUM_PREDICATES = {
    Stratum.O: lambda c: not c.c1.is_zero() and not c.c2.is_zero(),
    Stratum.LC2: lambda c: not c.c1.is_zero() and c.c2.is_zero(),
    Stratum.LC1: lambda c: c.c1.is_zero() and not c.c3.is_zero(),
    Stratum.C: lambda c: c.c1.is_zero() and c.c3.is_zero(),
}


def classify_line(p: ProjPoint) -> LineStratum:
    v = p.coords
    return LineStratum.Cprime if bilinear(v, v).is_zero() else LineStratum.Oprime


def theta_image(f: Flag) -> Flag:
    """Flag of theta(B) = (B^T)^{-1} for B = g B_std g^{-1}: represented by (g^T)^{-1}(-K3)."""
    g = f.rep
    return flag_from_matrix(inverse3(g.T) @ -K3(g.ctx))


def theta_stable(f: Flag) -> bool:
    return theta_image(f) == f


def _span_vectors(f: Flag):
    v1, v2 = f.canonical.col(0), f.canonical.col(1)
    els = elements(f.ctx)
    for a in els:
        for b in els:
            yield v1 * a + v2 * b


def _proportional(u: Vec3, v: Vec3) -> bool:
    return u.cross(v).is_zero()


def flag_property_oracle(f: Flag) -> Stratum:
    """Stratum found by testing the defining vector properties over all of V2.

    Finite fields only; quantifies over every vector of V2.
    """
    if not f.ctx.is_finite:
        raise ValueError("the property oracle enumerates V2 and needs a finite field")
    v1 = f.canonical.col(0)
    vs = [v for v in _span_vectors(f) if not v.is_zero()]
    isotropic_line = bilinear(v1, v1).is_zero()
    found = []
    if isotropic_line:
        if all(bilinear(v1, v).is_zero() for v in vs):
            found.append(Stratum.C)
        if all(_proportional(v1, v) or not bilinear(v1, v).is_zero() for v in vs):
            found.append(Stratum.LC1)
    else:
        if all(not bilinear(v1, v).is_zero() or not bilinear(v, v).is_zero() for v in vs):
            found.append(Stratum.O)
        if any(bilinear(v1, v).is_zero() and bilinear(v, v).is_zero() for v in vs):
            found.append(Stratum.LC2)
    if len(found) != 1:
        raise AssertionError(f"flag {f} satisfies properties {found}")
    return found[0]
