"""Exact integer and rational linear algebra for rank-3 exponent lattices.

Everything here works over arbitrary-precision Python ints and
``fractions.Fraction``; there is no floating point anywhere.  Vectors are
tuples of ints (or Fractions), matrices are tuples of row tuples.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

IntVec = tuple[int, ...]
IntMat = tuple[IntVec, ...]


class NotInLattice(ValueError):
    """Raised when a vector is not an integer combination of a lattice basis."""


class IllPosedWeights(ValueError):
    """Raised for weight quadruples where some three weights share a factor."""


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s, next_s = 1, 0
    t, next_t = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        s, next_s = next_s, s - q * next_s
        t, next_t = next_t, t - q * next_t
        g, next_g = next_g, g - q * next_g
    if g < 0:
        s, t, g = -s, -t, -g
    return g, s, t


def identity(n: int) -> IntMat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def vec_dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v, strict=True))


def mat_vec(m: Sequence[Sequence], v: Sequence) -> tuple:
    """Matrix times column vector."""
    return tuple(vec_dot(row, v) for row in m)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    bt = list(zip(*b))
    return tuple(tuple(vec_dot(row, col) for col in bt) for row in a)


def transpose(m: Sequence[Sequence]) -> tuple:
    return tuple(zip(*m))


def det(m: Sequence[Sequence]):
    """Exact determinant by cofactor expansion (matrices here are <= 4x4)."""
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = 0
    sign = 1
    for j in range(n):
        if m[0][j]:
            minor = tuple(tuple(row[k] for k in range(n) if k != j) for row in m[1:])
            total += sign * m[0][j] * det(minor)
        sign = -sign
    return total


def is_unimodular(m: Sequence[Sequence[int]]) -> bool:
    """True iff the square integer matrix has determinant +-1."""
    return det(m) in (1, -1)


def mat_is_integer(m: Sequence[Sequence]) -> bool:
    return all(Fraction(x).denominator == 1 for row in m for x in row)


def mat_to_int(m: Sequence[Sequence]) -> IntMat:
    return tuple(tuple(int(x) for x in row) for row in m)


def mat_inv_rational(m: Sequence[Sequence]) -> tuple:
    """Exact inverse over the rationals via the adjugate."""
    n = len(m)
    d = Fraction(det(m))
    if d == 0:
        raise ZeroDivisionError("matrix is singular")
    adj = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = tuple(
                tuple(m[r][c] for c in range(n) if c != i)
                for r in range(n)
                if r != j
            )
            row.append((-1) ** (i + j) * det(minor) / d)
        adj.append(tuple(Fraction(x) for x in row))
    return tuple(adj)


def mat_inv_unimodular(m: Sequence[Sequence[int]]) -> IntMat:
    """Integer inverse of a GL(n, Z) matrix."""
    inv = mat_inv_rational(m)
    if not mat_is_integer(inv):
        raise ValueError("matrix is not unimodular")
    return mat_to_int(inv)


def hnf(m: Sequence[Sequence[int]]) -> tuple[IntMat, IntMat]:
    """Row Hermite normal form.

    Returns (h, u) with h = u * m, u unimodular.  Pivots are positive,
    entries above a pivot are reduced into [0, pivot), zero rows sink to
    the bottom.  The form is canonical, so it doubles as a deterministic
    choice of basis for the row lattice.
    """
    rows = [list(r) for r in m]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    u = [list(r) for r in identity(nrows)]
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        u[r], u[piv] = u[piv], u[r]
        for i in range(r + 1, nrows):
            while rows[i][c]:
                g, s, t = xgcd(rows[r][c], rows[i][c])
                pr, qi = rows[r][c] // g, rows[i][c] // g
                rows[r], rows[i] = (
                    [s * a + t * b for a, b in zip(rows[r], rows[i])],
                    [-qi * a + pr * b for a, b in zip(rows[r], rows[i])],
                )
                u[r], u[i] = (
                    [s * a + t * b for a, b in zip(u[r], u[i])],
                    [-qi * a + pr * b for a, b in zip(u[r], u[i])],
                )
        if rows[r][c] < 0:
            rows[r] = [-x for x in rows[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = rows[i][c] // rows[r][c]
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
                u[i] = [a - q * b for a, b in zip(u[i], u[r])]
        r += 1
        if r == nrows:
            break
    h = tuple(tuple(row) for row in rows)
    return h, tuple(tuple(row) for row in u)


def snf_invariant_factors(m: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Nonzero invariant factors of the Smith normal form, in divisibility order."""
    a = [list(r) for r in m]
    nrows, ncols = len(a), len(a[0]) if m else 0
    factors = []
    top = 0
    while top < min(nrows, ncols):
        if all(a[i][j] == 0 for i in range(top, nrows) for j in range(top, ncols)):
            break
        # move a nonzero entry of least magnitude to the pivot slot
        while True:
            pi, pj = min(
                (
                    (i, j)
                    for i in range(top, nrows)
                    for j in range(top, ncols)
                    if a[i][j]
                ),
                key=lambda ij: abs(a[ij[0]][ij[1]]),
            )
            a[top], a[pi] = a[pi], a[top]
            for row in a:
                row[top], row[pj] = row[pj], row[top]
            p = a[top][top]
            done = True
            for i in range(top + 1, nrows):
                q = a[i][top] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[top])]
                if a[i][top]:
                    done = False
            for j in range(top + 1, ncols):
                q = a[top][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[top]
                if a[top][j]:
                    done = False
            if done:
                # pivot must divide every remaining entry
                bad = next(
                    (
                        (i, j)
                        for i in range(top + 1, nrows)
                        for j in range(top + 1, ncols)
                        if a[i][j] % p
                    ),
                    None,
                )
                if bad is None:
                    break
                a[top] = [x + y for x, y in zip(a[top], a[bad[0]])]
        factors.append(abs(a[top][top]))
        top += 1
    return tuple(factors)


def check_well_posed(weights: Sequence[int]) -> None:
    if len(weights) != 4 or any(w <= 0 for w in weights):
        raise IllPosedWeights(f"need four positive weights, got {tuple(weights)}")
    for skip in range(4):
        rest = [w for i, w in enumerate(weights) if i != skip]
        g = gcd(gcd(rest[0], rest[1]), rest[2])
        if g != 1:
            raise IllPosedWeights(
                f"weights {tuple(weights)} are not well-posed: "
                f"gcd of all but position {skip} is {g}"
            )


def kernel_basis(weights: Sequence[int]) -> IntMat:
    """Canonical basis (3x4, HNF rows) of {m in Z^4 : sum(a_i * m_i) = 0}.

    If u * a = (g, 0, 0, 0)^T with u in GL(4, Z), the last three rows of u
    generate the kernel lattice; re-running HNF on them makes the choice
    canonical.
    """
    check_well_posed(weights)
    col = tuple((w,) for w in weights)
    _, u = hnf(col)
    basis = u[1:]
    h, _ = hnf(basis)
    return h


def to_coords(basis: IntMat, m: Sequence[int]) -> IntVec:
    """Coordinates x with x . basis = m, for m in the lattice spanned by basis.

    Exploits the HNF shape of the basis: back-substitute on pivot columns,
    then verify the full residual.  Raises NotInLattice otherwise.
    """
    pivots = [next(j for j, x in enumerate(row) if x) for row in basis]
    coords = []
    for i, row in enumerate(basis):
        j = row[pivots[i]]
        residual = m[pivots[i]] - sum(
            coords[k] * basis[k][pivots[i]] for k in range(i)
        )
        q, rem = divmod(residual, j)
        if rem:
            raise NotInLattice(f"{tuple(m)} is not in the lattice")
        coords.append(q)
    if any(
        sum(coords[k] * basis[k][j] for k in range(len(basis))) != m[j]
        for j in range(len(m))
    ):
        raise NotInLattice(f"{tuple(m)} is not in the lattice")
    return tuple(coords)


def to_coords_rational(basis: IntMat, m: Sequence) -> tuple[Fraction, ...]:
    """Like to_coords but over Q: solves x . basis = m exactly, m rational."""
    m = tuple(Fraction(x) for x in m)
    pivots = [next(j for j, x in enumerate(row) if x) for row in basis]
    coords: list[Fraction] = []
    for i, row in enumerate(basis):
        residual = m[pivots[i]] - sum(
            coords[k] * basis[k][pivots[i]] for k in range(i)
        )
        coords.append(residual / row[pivots[i]])
    if any(
        sum(coords[k] * basis[k][j] for k in range(len(basis))) != m[j]
        for j in range(len(m))
    ):
        raise NotInLattice(f"{tuple(m)} is not in the span of the basis")
    return tuple(coords)


def from_coords(basis: IntMat, coords: Sequence) -> tuple:
    """Inverse of to_coords: x . basis as an ambient 4-vector."""
    return tuple(
        sum(coords[k] * basis[k][j] for k in range(len(basis)))
        for j in range(len(basis[0]))
    )


def primitive(v: Sequence[int]) -> IntVec:
    """Divide an integer vector by the gcd of its entries (positive gcd)."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(x // g for x in v)
