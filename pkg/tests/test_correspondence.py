"""Isomorphism derivation, row verification, swaps, amoeba maps, subpolytope search."""

import pytest

from k3corr.correspondence import (
    InconsistentColumns,
    RankDeficientColumns,
    amoeba_map,
    common_delta,
    derive_iso,
    compose_isos,
    search_sub_reflexive,
    verify_row,
    verify_swaps,
)
from k3corr.dataset import RowRecord
from k3corr.intlinalg import identity, is_unimodular, mat_mul, mat_vec
from k3corr.picard import picard_rank
from k3corr.polytope import hull, is_reflexive, unimodular_equivalent
from k3corr.weights import Monomial, WeightSystem, newton_polytope, parse_monomial


def _iso_maps_all_columns(row, i, j, iso):
    for col in row.columns:
        src = row.weights[i].monomial_point(col[i])
        tgt = row.weights[j].monomial_point(col[j])
        assert tuple(mat_vec(iso.u, src)) == tgt


def test_derive_iso_16_54(rows_by_key):
    """The displayed correspondence: Z^3<->Z^3, W^3YZ<->W^3XZ, W^6X<->W^7,
    X^4<->WY^3, WY^3<->X^3Y, all five columns matched by one map."""
    row = rows_by_key["16-54"]
    iso = derive_iso(row, 0, 1)
    assert is_unimodular(iso.u)
    _iso_maps_all_columns(row, 0, 1, iso)


def test_derive_iso_14_28_regression(rows_by_key):
    """Solved by hand in the canonical bases: the fourth column is forced."""
    row = rows_by_key["14-28-45-51"]
    iso = derive_iso(row, 0, 1)
    assert iso.u == ((0, -1, -1), (1, 7, 0), (0, 0, 1))
    _iso_maps_all_columns(row, 0, 1, iso)


def test_derive_iso_identity_row():
    ws = WeightSystem.from_weights([1, 1, 1, 1])
    cols = tuple(
        (parse_monomial(t), parse_monomial(t)) for t in ("W^4", "X^4", "Y^4", "Z^4")
    )
    row = RowRecord(
        ids=(1, 1),
        weights=(ws, ws),
        degrees=(4, 4),
        columns=cols,
        lattice_label="test",
        rank=1,
    )
    iso = derive_iso(row, 0, 1)
    assert iso.u == identity(3)


def test_derive_iso_inverse_and_composition(rows_by_key):
    row = rows_by_key["14-28-45-51"]
    fwd = derive_iso(row, 0, 1)
    back = derive_iso(row, 1, 0)
    assert mat_mul(fwd.u, back.u) == identity(3)
    assert fwd.inverse().u == back.u
    # a -> b -> c equals a -> c
    ab = derive_iso(row, 0, 1)
    bc = derive_iso(row, 1, 2)
    ac = derive_iso(row, 0, 2)
    assert compose_isos(bc, ab).u == ac.u


def test_derive_iso_all_pairs_all_rows(rows):
    for row in rows:
        for i in range(row.n_weights):
            for j in range(row.n_weights):
                if i == j:
                    continue
                iso = derive_iso(row, i, j)
                assert is_unimodular(iso.u)
                _iso_maps_all_columns(row, i, j, iso)


def test_derive_iso_inconsistent_columns(rows_by_key):
    row = rows_by_key["13-72"]
    # swapping two monomials of one side breaks the correspondence but not degrees
    cols = [list(c) for c in row.columns]
    cols[0][1], cols[1][1] = cols[1][1], cols[0][1]
    with pytest.raises(InconsistentColumns):
        derive_iso(row.with_columns(cols), 0, 1)


def test_derive_iso_rank_deficient():
    ws = WeightSystem.from_weights([1, 1, 1, 1])
    m = parse_monomial("W^2X^2")
    n = parse_monomial("W^2Y^2")
    row = RowRecord(
        ids=(1, 1),
        weights=(ws, ws),
        degrees=(4, 4),
        columns=((m, m), (n, n)),
        lattice_label="test",
        rank=1,
    )
    with pytest.raises(RankDeficientColumns):
        derive_iso(row, 0, 1)


def test_exponent_map_matches_on_ambient_vectors(rows_by_key):
    from fractions import Fraction

    from k3corr.intlinalg import from_coords

    row = rows_by_key["16-54"]
    iso = derive_iso(row, 0, 1)
    e = iso.exponent_map
    for col in row.columns:
        src4 = from_coords(row.weights[0].basis, row.weights[0].monomial_point(col[0]))
        tgt4 = from_coords(row.weights[1].basis, row.weights[1].monomial_point(col[1]))
        image = tuple(sum(e[i][j] * src4[j] for j in range(4)) for i in range(4))
        assert image == tuple(Fraction(x) for x in tgt4)


def test_amoeba_map_identity_and_inverse(rows_by_key):
    row = rows_by_key["14-28-45-51"]
    fwd = derive_iso(row, 0, 1)
    back = derive_iso(row, 1, 0)
    assert amoeba_map(fwd) == fwd.u
    assert mat_mul(amoeba_map(fwd), amoeba_map(back)) == identity(3)


def test_common_delta_13_72(rows_by_key):
    delta = common_delta(rows_by_key["13-72"])
    assert delta.n_vertices == 6  # hexahedral: all six columns are vertices
    assert is_reflexive(delta)
    assert picard_rank(delta).rho == 8


def test_common_delta_14_row(rows_by_key):
    delta = common_delta(rows_by_key["14-28-45-51"])
    assert delta.n_vertices == 4
    assert picard_rank(delta).rho == 10


def test_common_delta_contained_in_all_newtons(rows):
    from k3corr.polytope import transform

    for row in rows:
        delta = common_delta(row)
        assert is_reflexive(delta)
        for k, ws in enumerate(row.weights):
            image = transform(delta, derive_iso(row, 0, k).u) if k else delta
            assert newton_polytope(ws).contains(image)


def test_figure2_containment(rows_by_key):
    pair = common_delta(rows_by_key["26-34"])
    triple = common_delta(rows_by_key["26-34-76"])
    assert pair.contains(triple)
    assert pair.vertices != triple.vertices  # strict
    assert not triple.contains(pair)
    assert picard_rank(pair).rho == picard_rank(triple).rho == 14


def test_full_newtons_26_34_isomorphic(rows_by_key):
    n26 = newton_polytope(WeightSystem.from_weights([2, 4, 5, 9]))
    n34 = newton_polytope(WeightSystem.from_weights([2, 6, 7, 15]))
    u = unimodular_equivalent(n26, n34)
    assert u is not None
    # and the pair's common polytope is that same shape
    pair = common_delta(rows_by_key["26-34"])
    assert unimodular_equivalent(pair, n26) is not None


def test_verify_row_passes_all(rows):
    for row in rows:
        report = verify_row(row)
        assert report.passed, [c for c in report.checks if not c.passed]


def test_verify_row_46_65_80(rows_by_key):
    report = verify_row(rows_by_key["46-65-80"])
    assert report.passed
    assert any("rank(delta)=18" in c.name for c in report.checks)


def test_verify_row_catches_corrupted_exponent(rows_by_key):
    row = rows_by_key["16-54"]
    cols = [list(c) for c in row.columns]
    bad = Monomial((cols[0][0].e[0] + 1,) + cols[0][0].e[1:])
    cols[0][0] = bad
    report = verify_row(row.with_columns(cols))
    assert not report.passed
    failing = [c for c in report.checks if not c.passed]
    assert any("monomial-degrees" == c.name for c in failing)
    assert any(str(bad) in c.detail for c in failing)


def test_verify_swaps_empty_without_bold(rows_by_key):
    report = verify_swaps(rows_by_key["13-72"])
    assert report.checks == ()
    assert report.passed


def test_verify_swaps_16_54(rows_by_key):
    report = verify_swaps(rows_by_key["16-54"])
    assert len(report.checks) == 2  # one transposition, applied to each side
    assert report.passed


def test_verify_swaps_56_73_all_permutations(rows_by_key):
    report = verify_swaps(rows_by_key["56-73"])
    assert len(report.checks) == 10  # 5 non-identity permutations x 2 sides
    assert report.passed


def test_verify_swaps_all_bold_rows(rows):
    for row in rows:
        if row.bold:
            assert verify_swaps(row).passed


# -- vertex-deletion search ------------------------------------------------------


def test_search_children_are_reflexive_and_inside():
    p = hull([(-1, -1, -1), (3, -1, -1), (-1, 3, -1), (-1, -1, 3)])
    res = search_sub_reflexive(p, max_depth=1)
    for q in res.found:
        assert is_reflexive(q)
        assert p.contains(q)
        assert q.origin_interior


def test_search_finds_figure2_polytope(rows_by_key):
    n26 = newton_polytope(WeightSystem.from_weights([2, 4, 5, 9]))
    res = search_sub_reflexive(n26)
    target = common_delta(rows_by_key["26-34-76"])
    assert any(unimodular_equivalent(q, target) for q in res.found)


def test_search_cross_polytope_empty():
    cross = hull(
        [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    )
    res = search_sub_reflexive(cross, max_depth=2)
    assert res.found == ()
    assert not res.exhausted


def test_search_closure_idempotent(rows_by_key):
    """Re-running deletion on any result yields only already-known polytopes
    once the walk terminated without hitting its limits."""
    delta = common_delta(rows_by_key["16-54"])
    res = search_sub_reflexive(delta, max_depth=4, max_results=64)
    assert not res.exhausted
    known = (delta,) + res.found
    for q in res.found:
        again = search_sub_reflexive(q, max_depth=1, max_results=64)
        for child in again.found:
            assert any(unimodular_equivalent(child, k) for k in known)


def test_no_row_rank_subpolytope_with_zero_l0(rows_by_key):
    """Scope-bounded version of the remark that also names 26-34-76 and 27-49:
    the deletion closure offers no substitute polytope of the row's own rank
    with vanishing correction term."""
    from k3corr.picard import l0_rank, picard_rank

    for key in ("16-54", "26-34-76", "27-49"):
        row = rows_by_key[key]
        delta = common_delta(row)
        assert l0_rank(delta) > 0
        res = search_sub_reflexive(delta)
        assert not [
            q
            for q in res.found
            if picard_rank(q).rho == row.rank and l0_rank(q) == 0
        ]


def test_search_respects_result_cap():
    p = hull([(-1, -1, -1), (3, -1, -1), (-1, 3, -1), (-1, -1, 3)])
    res = search_sub_reflexive(p, max_results=1, max_depth=3)
    if len(res.found) == 1:
        deeper = search_sub_reflexive(p, max_results=64, max_depth=3)
        if len(deeper.found) > 1:
            assert res.exhausted
