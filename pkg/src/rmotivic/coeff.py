"""Bigraded coefficient rings.

The motivic coefficient ring is F2[t, r] (t and r are the usual weight-graded
classes of degree (0,-1) and (-1,-1)); the equivariant ring carries an extra
infinitely-divisible torsion summand spanned by symbols Q/(t^i r^j).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Tuple


@dataclass(frozen=True)
class BiDegree:
    p: int  # topological degree
    q: int  # weight

    def __add__(self, other: "BiDegree") -> "BiDegree":
        return BiDegree(self.p + other.p, self.q + other.q)

    def __neg__(self) -> "BiDegree":
        return BiDegree(-self.p, -self.q)

    def scale(self, n: int) -> "BiDegree":
        return BiDegree(n * self.p, n * self.q)


@dataclass(frozen=True)
class TriDegree:
    s: int  # homological filtration
    p: int
    q: int

    def __post_init__(self):
        if self.s < 0:
            raise ValueError(f"filtration must be non-negative, got {self.s}")

    def __add__(self, other: "TriDegree") -> "TriDegree":
        return TriDegree(self.s + other.s, self.p + other.p, self.q + other.q)

    @property
    def bidegree(self) -> BiDegree:
        return BiDegree(self.p, self.q)

    @property
    def stem(self) -> int:
        return self.p - self.s


TAU_BIDEGREE = BiDegree(0, -1)
RHO_BIDEGREE = BiDegree(-1, -1)
#: default bidegree of the divisible-torsion generator; configurable because
#: the convention is not forced by the multiplicative relations.
THETA_BIDEGREE = BiDegree(2, 0)


def coeff_monomial_bidegree(a: int, b: int) -> BiDegree:
    """Bidegree of t^a r^b."""
    return BiDegree(-b, -a - b)


class MotivicCoeff:
    """F2-sum of monomials t^a r^b, stored as a frozenset of exponent pairs."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[Tuple[int, int]] = ()):
        acc: set = set()
        for t in terms:
            acc.symmetric_difference_update({t})
        for a, b in acc:
            if a < 0 or b < 0:
                raise ValueError(f"negative exponent in t^{a} r^{b}")
        self.terms: FrozenSet[Tuple[int, int]] = frozenset(acc)

    @classmethod
    def zero(cls) -> "MotivicCoeff":
        return cls()

    @classmethod
    def one(cls) -> "MotivicCoeff":
        return cls([(0, 0)])

    @classmethod
    def tau(cls, n: int = 1) -> "MotivicCoeff":
        return cls([(n, 0)])

    @classmethod
    def rho(cls, n: int = 1) -> "MotivicCoeff":
        return cls([(0, n)])

    @classmethod
    def monomial(cls, a: int, b: int) -> "MotivicCoeff":
        return cls([(a, b)])

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, MotivicCoeff) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(("MotivicCoeff", self.terms))

    def __add__(self, other: "MotivicCoeff") -> "MotivicCoeff":
        return MotivicCoeff(self.terms ^ other.terms)

    def __mul__(self, other: "MotivicCoeff") -> "MotivicCoeff":
        acc: set = set()
        for a1, b1 in self.terms:
            for a2, b2 in other.terms:
                acc.symmetric_difference_update({(a1 + a2, b1 + b2)})
        return MotivicCoeff(acc)

    def bidegree(self) -> BiDegree:
        degs = {coeff_monomial_bidegree(a, b) for a, b in self.terms}
        if len(degs) != 1:
            raise ValueError(f"inhomogeneous element {self}")
        return next(iter(degs))

    def is_homogeneous(self) -> bool:
        return len({coeff_monomial_bidegree(a, b) for a, b in self.terms}) <= 1

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(render_coeff_monomial(a, b) for a, b in sorted(self.terms))


def render_coeff_monomial(a: int, b: int) -> str:
    parts = []
    if a == 1:
        parts.append("t")
    elif a > 1:
        parts.append(f"t^{a}")
    if b == 1:
        parts.append("r")
    elif b > 1:
        parts.append(f"r^{b}")
    return " ".join(parts) if parts else "1"


class EquivariantCoeff:
    """Positive part F2[t, r] plus the divisible torsion cone F2{Q/(t^i r^j)}."""

    __slots__ = ("pos", "cone")

    def __init__(self, pos: Iterable[Tuple[int, int]] = (), cone: Iterable[Tuple[int, int]] = ()):
        self.pos = MotivicCoeff(pos)
        acc: set = set()
        for c in cone:
            acc.symmetric_difference_update({c})
        for i, j in acc:
            if i < 0 or j < 0:
                raise ValueError(f"negative divisor exponent Q/(t^{i} r^{j})")
        self.cone: FrozenSet[Tuple[int, int]] = frozenset(acc)

    @classmethod
    def from_motivic(cls, x: MotivicCoeff) -> "EquivariantCoeff":
        return cls(x.terms)

    @classmethod
    def theta(cls, i: int = 0, j: int = 0) -> "EquivariantCoeff":
        return cls(cone=[(i, j)])

    def __bool__(self) -> bool:
        return bool(self.pos) or bool(self.cone)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, EquivariantCoeff)
            and self.pos == other.pos
            and self.cone == other.cone
        )

    def __hash__(self) -> int:
        return hash(("EquivariantCoeff", self.pos.terms, self.cone))

    def __add__(self, other: "EquivariantCoeff") -> "EquivariantCoeff":
        return EquivariantCoeff(self.pos.terms ^ other.pos.terms, self.cone ^ other.cone)

    def __mul__(self, other: "EquivariantCoeff") -> "EquivariantCoeff":
        # cone * cone = 0; positive monomials act on the cone by exponent
        # subtraction, dying as soon as a divisor exponent is exhausted.
        pos = self.pos * other.pos
        cone: set = set()
        for src, dst in ((self.pos.terms, other.cone), (other.pos.terms, self.cone)):
            for a, b in src:
                for i, j in dst:
                    if i >= a and j >= b:
                        cone.symmetric_difference_update({(i - a, j - b)})
        return EquivariantCoeff(pos.terms, cone)

    def bidegree(self, theta: BiDegree = THETA_BIDEGREE) -> BiDegree:
        degs = {coeff_monomial_bidegree(a, b) for a, b in self.pos.terms}
        for i, j in self.cone:
            degs.add(theta + (-TAU_BIDEGREE.scale(i)) + (-RHO_BIDEGREE.scale(j)))
        if len(degs) != 1:
            raise ValueError(f"inhomogeneous element {self}")
        return next(iter(degs))

    def __repr__(self) -> str:
        parts = []
        if self.pos:
            parts.append(repr(self.pos))
        for i, j in sorted(self.cone):
            if i == 0 and j == 0:
                parts.append("Q")
            else:
                parts.append(f"Q/({render_coeff_monomial(i, j)})")
        return " + ".join(parts) if parts else "0"


def coeff_mul(x, y):
    """Product in either ring variant; mixing variants is a usage error."""
    if isinstance(x, MotivicCoeff) and isinstance(y, MotivicCoeff):
        return x * y
    if isinstance(x, EquivariantCoeff) and isinstance(y, EquivariantCoeff):
        return x * y
    raise TypeError(f"cannot multiply {type(x).__name__} and {type(y).__name__}")


def coeff_bidegree(x) -> BiDegree:
    return x.bidegree()


def coeff_basis(d: BiDegree) -> List[MotivicCoeff]:
    """All motivic monomials of bidegree d (at most one)."""
    b = -d.p
    a = -d.q - b
    if a >= 0 and b >= 0:
        return [MotivicCoeff.monomial(a, b)]
    return []
