"""Weight systems, anticanonical monomials and their Newton polytopes.

A weight system (a0 <= a1 <= a2 <= a3) fixes the degree d = sum(a_i) and a
canonical basis of the rank-3 lattice of degree-zero exponent vectors.
Anticanonical monomials in W, X, Y, Z map to lattice points by subtracting
(1, 1, 1, 1) from the exponent vector and expressing the result in that
basis.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from . import intlinalg
from .intlinalg import IntMat, IntVec
from .polytope import Polytope3, hull

VARIABLES = "WXYZ"

_TOKEN = re.compile(r"([WXYZ])(?:\^\{?(\d+)\}?)?")


class MalformedMonomial(ValueError):
    """Raised for text that is not a monomial in W, X, Y, Z."""


class WrongDegree(ValueError):
    """Raised when a monomial does not have the anticanonical degree."""

    def __init__(self, monomial: "Monomial", got: int, want: int):
        super().__init__(f"{monomial} has degree {got}, expected {want}")
        self.got = got
        self.want = want


@dataclass(frozen=True)
class Monomial:
    """Exponent vector of a monomial in the homogeneous coordinates W,X,Y,Z."""

    e: tuple[int, int, int, int]

    def __post_init__(self):
        if len(self.e) != 4 or any(x < 0 for x in self.e):
            raise MalformedMonomial(f"bad exponent vector {self.e}")

    def __str__(self):
        if not any(self.e):
            return "1"
        return "".join(
            v if k == 1 else f"{v}^{k}"
            for v, k in zip(VARIABLES, self.e)
            if k
        )

    def __repr__(self):
        return f"Monomial({self})"


def parse_monomial(text: str) -> Monomial:
    """Parse paper-style notation like ``W^3X^7`` or ``WXYZ``.

    An omitted variable has exponent 0, a bare variable exponent 1.
    Repeated variables, zero exponents and stray characters are rejected.
    """
    s = text.strip()
    if not s:
        raise MalformedMonomial("empty monomial")
    pos = 0
    exps = {}
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            raise MalformedMonomial(f"cannot parse {text!r} at {s[pos:]!r}")
        var, exp = m.group(1), m.group(2)
        if var in exps:
            raise MalformedMonomial(f"variable {var} repeated in {text!r}")
        k = 1 if exp is None else int(exp)
        if k <= 0:
            raise MalformedMonomial(f"exponent of {var} must be positive in {text!r}")
        exps[var] = k
        pos = m.end()
    return Monomial(tuple(exps.get(v, 0) for v in VARIABLES))


@dataclass(frozen=True)
class WeightSystem:
    """Well-posed quadruple of positive weights, ascending, with its lattice basis.

    `perm` records where each sorted weight came from in the input order, so
    monomials written in the caller's W,X,Y,Z convention stay meaningful.
    """

    a: tuple[int, int, int, int]
    d: int
    basis: IntMat
    perm: tuple[int, int, int, int]

    @classmethod
    def from_weights(cls, weights: Sequence[int]) -> "WeightSystem":
        intlinalg.check_well_posed(weights)
        order = sorted(range(4), key=lambda i: weights[i])
        a = tuple(weights[i] for i in order)
        return cls(a=a, d=sum(a), basis=intlinalg.kernel_basis(a), perm=tuple(order))

    def __str__(self):
        return ",".join(str(w) for w in self.input_weights)

    @property
    def input_weights(self) -> tuple[int, int, int, int]:
        w = [0] * 4
        for k, i in enumerate(self.perm):
            w[i] = self.a[k]
        return tuple(w)

    def weighted_degree(self, m: Monomial) -> int:
        return sum(w * k for w, k in zip(self.input_weights, m.e))

    def _sorted_exponents(self, m: Monomial) -> tuple[int, int, int, int]:
        return tuple(m.e[i] for i in self.perm)

    def monomial_point(self, m: Monomial) -> IntVec:
        """Lattice coordinates of the degree-zero vector e - (1,1,1,1)."""
        got = self.weighted_degree(m)
        if got != self.d:
            raise WrongDegree(m, got, self.d)
        shifted = tuple(k - 1 for k in self._sorted_exponents(m))
        return intlinalg.to_coords(self.basis, shifted)

    def point_monomial(self, coords: Sequence[int]) -> Monomial:
        """Inverse of monomial_point, for points with all entries >= -1."""
        shifted = intlinalg.from_coords(self.basis, coords)
        e_sorted = tuple(x + 1 for x in shifted)
        if any(x < 0 for x in e_sorted):
            raise ValueError(f"{tuple(coords)} is outside the exponent cone")
        e = [0] * 4
        for k, i in enumerate(self.perm):
            e[i] = e_sorted[k]
        return Monomial(tuple(e))

    def anticanonical_exponents(self) -> Iterator[tuple[int, int, int, int]]:
        """All e >= 0 with sum(a_i e_i) = d, in sorted-weight coordinates."""
        a, d = self.a, self.d
        for e0 in range(d // a[0] + 1):
            r0 = d - a[0] * e0
            for e1 in range(r0 // a[1] + 1):
                r1 = r0 - a[1] * e1
                for e2 in range(r1 // a[2] + 1):
                    r2 = r1 - a[2] * e2
                    q, rem = divmod(r2, a[3])
                    if rem == 0:
                        yield (e0, e1, e2, q)


def anticanonical_points(ws: WeightSystem) -> tuple[IntVec, ...]:
    """Lattice points of the weight tetrahedron, via exponent enumeration."""
    return tuple(
        intlinalg.to_coords(ws.basis, tuple(k - 1 for k in e))
        for e in ws.anticanonical_exponents()
    )


@lru_cache(maxsize=None)
def delta_tetrahedron(ws: WeightSystem) -> Polytope3:
    """The rational tetrahedron cut out by m_i >= -1 on the degree-zero lattice.

    Vertex j puts every coordinate except m_j at -1, forcing
    m_j = (d - a_j) / a_j, which need not be an integer.
    """
    verts = []
    for j in range(4):
        m = [Fraction(-1)] * 4
        m[j] = Fraction(ws.d - ws.a[j], ws.a[j])
        verts.append(intlinalg.to_coords_rational(ws.basis, m))
    return hull(verts)


@lru_cache(maxsize=None)
def newton_polytope(ws: WeightSystem) -> Polytope3:
    """Convex hull of all lattice points of the weight tetrahedron."""
    return hull(anticanonical_points(ws))


def weights_from_text(text: str) -> WeightSystem:
    """Parse the CLI weight syntax ``a0,a1,a2,a3``."""
    try:
        parts = [int(tok) for tok in text.split(",")]
    except ValueError as exc:
        raise ValueError(f"bad weight list {text!r}") from exc
    return WeightSystem.from_weights(parts)
