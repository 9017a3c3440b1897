"""Lattice isomorphisms between weight systems and row verification.

The monomials in one column of a table row pin down a linear identification
of the degree-zero exponent lattices: solve on three independent columns,
then insist every remaining column is matched exactly.  On top of that sit
the common polytope of a row, the full verification report, the bold-column
exchange checks, and the vertex-deletion search for reflexive subpolytopes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .dataset import RowRecord
from .intlinalg import (
    det,
    is_unimodular,
    mat_inv_rational,
    mat_inv_unimodular,
    mat_is_integer,
    mat_mul,
    mat_to_int,
    mat_vec,
    transpose,
)
from .picard import picard_rank
from .polytope import (
    Polytope3,
    hull,
    is_reflexive,
    transform,
    unimodular_equivalent,
)
from .weights import WeightSystem, newton_polytope


class RankDeficientColumns(ValueError):
    """Raised when no three columns give linearly independent source points."""


class InconsistentColumns(ValueError):
    """Raised when no single linear map fits all columns."""


class NotUnimodularMap(ValueError):
    """Raised when the fitted map is not in GL(3, Z)."""


class NotReflexiveDelta(ValueError):
    """Raised when the common polytope of a row is not reflexive."""


class NotContained(ValueError):
    """Raised when the mapped common polytope leaves a Newton polytope."""


@dataclass(frozen=True)
class LatticeIso:
    """Unimodular identification of two degree-zero exponent lattices.

    `u` maps source lattice coordinates to target lattice coordinates;
    `exponent_map` is the same map written on ambient exponent 4-vectors
    (it is integral on the source lattice and kills its orthogonal
    complement).
    """

    u: tuple[tuple[int, int, int], ...]
    source: WeightSystem
    target: WeightSystem

    @property
    def exponent_map(self) -> tuple[tuple[Fraction, ...], ...]:
        bs = self.source.basis
        bt = self.target.basis
        gram_inv = mat_inv_rational(mat_mul(bs, transpose(bs)))
        left_inv = mat_mul(gram_inv, bs)  # 3x4 with left_inv . bs^T = I
        return mat_mul(transpose(bt), mat_mul(self.u, left_inv))

    def apply(self, coords):
        return mat_vec(self.u, coords)

    def inverse(self) -> "LatticeIso":
        return LatticeIso(
            u=mat_inv_unimodular(self.u), source=self.target, target=self.source
        )

    def compose(self, other: "LatticeIso") -> "LatticeIso":
        """self after other (other.target must be self.source)."""
        if other.target != self.source:
            raise ValueError("composition mismatch")
        return compose_isos(self, other)


def compose_isos(second: LatticeIso, first: LatticeIso) -> LatticeIso:
    return LatticeIso(
        u=mat_to_int(mat_mul(second.u, first.u)),
        source=first.source,
        target=second.target,
    )


def _column_points(row: RowRecord, weight_idx: int):
    ws = row.weights[weight_idx]
    return [ws.monomial_point(m) for m in row.column_monomials(weight_idx)]


def derive_iso(row: RowRecord, from_idx: int, to_idx: int) -> LatticeIso:
    """The unique linear map sending each source column point to its target.

    Solves on the first three linearly independent columns and verifies the
    rest; anything else is an error, never a best fit.
    """
    src = _column_points(row, from_idx)
    tgt = _column_points(row, to_idx)
    trip = next(
        (
            t
            for t in itertools.combinations(range(len(src)), 3)
            if det(tuple(src[i] for i in t)) != 0
        ),
        None,
    )
    if trip is None:
        raise RankDeficientColumns(
            f"row {row.key}: fewer than 3 independent source columns"
        )
    src_cols = transpose(tuple(src[i] for i in trip))
    tgt_cols = transpose(tuple(tgt[i] for i in trip))
    u = mat_mul(tgt_cols, mat_inv_rational(src_cols))
    bad = [
        j
        for j, (s, t) in enumerate(zip(src, tgt))
        if tuple(mat_vec(u, s)) != tuple(Fraction(x) for x in t)
    ]
    if bad:
        raise InconsistentColumns(
            f"row {row.key}: no linear map fits columns {bad} "
            f"({row.column_monomials(from_idx)[bad[0]]} vs "
            f"{row.column_monomials(to_idx)[bad[0]]})"
        )
    if not mat_is_integer(u):
        raise NotUnimodularMap(f"row {row.key}: map is not integral")
    u = mat_to_int(u)
    if not is_unimodular(u):
        raise NotUnimodularMap(f"row {row.key}: determinant is {det(u)}")
    return LatticeIso(u=u, source=row.weights[from_idx], target=row.weights[to_idx])


def amoeba_map(iso: LatticeIso) -> tuple[tuple[int, int, int], ...]:
    """Matrix of the induced linear map between amoebas.

    Monomial coordinate changes act on the real logarithm space by the same
    unimodular matrix, so amoebas of corresponding hypersurfaces match
    linearly.
    """
    assert is_unimodular(iso.u)
    return iso.u


@lru_cache(maxsize=None)
def common_delta(row: RowRecord) -> Polytope3:
    """Hull of the column points in the first weight's coordinates.

    Checked to be reflexive and, through each derived isomorphism, contained
    in the Newton polytope of every weight of the row.
    """
    delta = hull(_column_points(row, 0))
    if not is_reflexive(delta):
        raise NotReflexiveDelta(f"row {row.key}: common polytope is not reflexive")
    for k in range(row.n_weights):
        iso = derive_iso(row, 0, k)
        image = transform(delta, iso.u) if k else delta
        if not newton_polytope(row.weights[k]).contains(image):
            raise NotContained(
                f"row {row.key}: image leaves the Newton polytope of "
                f"{row.weights[k]}"
            )
    return delta


# -- verification reports -----------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    key: str
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            mark = "ok" if c.passed else "FAIL"
            detail = f"  ({c.detail})" if c.detail else ""
            out.append(f"[{mark:>4}] {self.key}: {c.name}{detail}")
        return out


class _Checks:
    def __init__(self, key: str):
        self.key = key
        self.results: list[CheckResult] = []

    def record(self, name: str, passed: bool, detail: str = ""):
        self.results.append(CheckResult(name, bool(passed), detail))

    def run(self, name: str, fn):
        """Run fn; exceptions become failed checks, truthy results pass."""
        try:
            value = fn()
        except Exception as exc:  # verification never throws
            self.results.append(CheckResult(name, False, str(exc)))
            return None
        self.results.append(CheckResult(name, True, ""))
        return value

    def report(self) -> VerificationReport:
        return VerificationReport(key=self.key, checks=tuple(self.results))


def verify_row(row: RowRecord) -> VerificationReport:
    """Run every check of the row contract; failures become report entries."""
    ck = _Checks(row.key)

    for k, ws in enumerate(row.weights):
        ck.record(
            f"degree[{row.ids[k]}]=sum(weights)",
            row.degrees[k] == ws.d,
            f"printed {row.degrees[k]}, weights give {ws.d}",
        )
    degree_bad = [
        (row.ids[k], j, str(m), ws.weighted_degree(m))
        for j, col in enumerate(row.columns)
        for k, (m, ws) in enumerate(zip(col, row.weights))
        if ws.weighted_degree(m) != row.degrees[k]
    ]
    ck.record(
        "monomial-degrees",
        not degree_bad,
        "" if not degree_bad else f"bad: {degree_bad[:3]}",
    )
    if degree_bad:
        return ck.report()

    isos = {}
    for k in range(1, row.n_weights):
        pair = f"{row.ids[0]}->{row.ids[k]}"
        iso = ck.run(f"iso[{pair}]", lambda k=k: derive_iso(row, 0, k))
        if iso is None:
            continue
        isos[k] = iso
        ck.record(f"iso[{pair}] unimodular", is_unimodular(iso.u))
        back = ck.run(f"iso[{row.ids[k]}->{row.ids[0]}]", lambda k=k: derive_iso(row, k, 0))
        if back is not None:
            ck.record(
                f"iso[{pair}] inverse pair",
                back.u == mat_inv_unimodular(iso.u),
            )
    # path independence: j -> k directly equals composite through weight 0
    for j, k in itertools.combinations(range(1, row.n_weights), 2):
        if j in isos and k in isos:
            direct = ck.run(
                f"iso[{row.ids[j]}->{row.ids[k]}]",
                lambda j=j, k=k: derive_iso(row, j, k),
            )
            if direct is not None:
                composite = mat_to_int(
                    mat_mul(isos[k].u, mat_inv_unimodular(isos[j].u))
                )
                ck.record(
                    f"iso[{row.ids[j]}->{row.ids[k]}] path-independent",
                    direct.u == composite,
                )

    delta = ck.run("common-delta reflexive+contained", lambda: common_delta(row))
    if delta is not None:
        rk = ck.run("rank(delta)", lambda: picard_rank(delta).rho)
        if rk is not None:
            ck.record(
                f"rank(delta)={row.rank}", rk == row.rank, f"computed {rk}"
            )
        for k, ws in enumerate(row.weights):
            rkn = ck.run(
                f"rank(newton[{row.ids[k]}])",
                lambda ws=ws: picard_rank(newton_polytope(ws)).rho,
            )
            if rkn is not None:
                ck.record(
                    f"rank(newton[{row.ids[k]}])={row.rank}",
                    rkn == row.rank,
                    f"computed {rkn}",
                )
    return ck.report()


def _swap_columns(row: RowRecord, weight_idx: int, perm: dict[int, int]) -> RowRecord:
    """Permute the bold monomials of one weight: column j takes the monomial
    previously in column perm[j]."""
    columns = [list(col) for col in row.columns]
    originals = [col[weight_idx] for col in row.columns]
    for j, src in perm.items():
        columns[j][weight_idx] = originals[src]
    return row.with_columns(columns)


def verify_swaps(row: RowRecord) -> VerificationReport:
    """Check every exchange of bold monomials within a single weight's row.

    For each non-identity permutation of the bold columns, applied to each
    weight in turn, the re-derived correspondence must still verify.
    """
    ck = _Checks(row.key)
    if not row.bold:
        return ck.report()
    bold = list(row.bold)
    for images in itertools.permutations(bold):
        perm = dict(zip(bold, images))
        if all(j == s for j, s in perm.items()):
            continue
        label = ",".join(f"{s}->{j}" for j, s in sorted(perm.items()))
        for k in range(row.n_weights):
            swapped = _swap_columns(row, k, perm)
            sub = verify_row(swapped)
            ck.record(
                f"swap[{label}] on {row.ids[k]}",
                sub.passed,
                "" if sub.passed else "; ".join(
                    f"{c.name}: {c.detail}" for c in sub.checks if not c.passed
                ),
            )
    return ck.report()


# -- reflexive subpolytope search ----------------------------------------------


@dataclass(frozen=True)
class SubReflexiveSearch:
    found: tuple[Polytope3, ...]
    exhausted: bool  # True when limits cut the walk short
    explored: int = 0


def _drop_vertex(p: Polytope3, v_idx: int):
    pts = [q for q in p.lattice_points if q != p.vertices[v_idx]]
    if len(pts) < 4:
        return None
    try:
        child = hull(pts)
    except ValueError:
        return None
    if not child.origin_interior:
        return None
    return child


def search_sub_reflexive(
    p: Polytope3, max_results: int = 64, max_depth: int = 3
) -> SubReflexiveSearch:
    """Reflexive subpolytopes reachable by deleting vertices one at a time.

    Breadth-first over "drop one vertex, re-hull the remaining lattice
    points"; states that lose the origin from their interior are pruned
    (no descendant can regain it).  Results are deduplicated up to GL(3, Z)
    and each keeps the origin interior.
    """
    seen: list[Polytope3] = [p]
    found: list[Polytope3] = []
    queue: list[tuple[Polytope3, int]] = [(p, 0)]
    exhausted = False
    explored = 0
    while queue:
        state, depth = queue.pop(0)
        if depth >= max_depth:
            if any(_drop_vertex(state, i) for i in range(state.n_vertices)):
                exhausted = True
            continue
        explored += 1
        for i in range(state.n_vertices):
            child = _drop_vertex(state, i)
            if child is None:
                continue
            if any(unimodular_equivalent(child, known) for known in seen):
                continue
            seen.append(child)
            if child.is_lattice and is_reflexive(child):
                if len(found) >= max_results:
                    exhausted = True
                    continue
                found.append(child)
            queue.append((child, depth + 1))
    return SubReflexiveSearch(
        found=tuple(found), exhausted=exhausted, explored=explored
    )
