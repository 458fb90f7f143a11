"""The tight family, equality characterization, isomorphism, and the probe."""

from __future__ import annotations

import random

import pytest

import lapgap as lg
from lapgap.errors import DomainError, InputError, SizeLimitError
from lapgap.extremal import _probe_fast_d2, _probe_general

C5_EDGES = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]


# --- the tight family -----------------------------------------------------------


def test_zparams_validation():
    with pytest.raises(InputError):
        lg.ZParams(1, 0, 1)
    with pytest.raises(InputError):
        lg.ZParams(1, 1, 0)
    with pytest.raises(InputError):
        lg.build_z(0, 2, 1)
    p = lg.ZParams(2, 2, 1)
    assert p.n == 7 and p.dim == 4


def test_build_z_small_cases():
    Z = lg.build_z(1, 2, 1)
    assert Z.n == 5 and Z.dim == 2
    report = lg.missing_faces(Z)
    assert report.missing == ((0, 1), (2, 3)) and report.h == 1

    Z = lg.build_z(2, 1, 1)
    assert Z.n == 4
    assert lg.missing_faces(Z).missing == ((0, 1, 2),)


def test_build_z_missing_face_structure():
    for d in (1, 2, 3):
        for t in (1, 2, 3):
            for r in (1, 2):
                report = lg.missing_faces(lg.build_z(d, t, r))
                assert report.h == d
                assert len(report.missing) == t
                assert all(len(f) == d + 1 for f in report.missing)


def test_predicted_profile_z121():
    rows = lg.predicted_z_profile(1, 2, 1)
    assert [r.mu for r in rows] == [5, 3, 1, 1]
    assert [r.delta for r in rows] == [5, 3, 1, 0]


def test_predicted_profile_z221():
    rows = lg.predicted_z_profile(2, 2, 1)
    assert [r.mu for r in rows] == [7, 7, 4, 4, 1, 1]


def test_predicted_profile_bound_identity():
    for d in (1, 2, 3):
        for t in (1, 2, 3):
            for r in (1, 2):
                n = (d + 1) * t + r
                for row in lg.predicted_z_profile(d, t, r):
                    assert (d + 1) * (row.delta + row.k + 1) - d * n == row.mu


def test_verify_z_family_small_grid():
    for d, t, r in ((1, 2, 1), (2, 2, 1), (3, 1, 2)):
        report = lg.verify_z_family(d, t, r)
        assert report.ok
        for row in report.rows:
            assert abs(row.mu_eigen - row.mu_predicted) <= 1e-8
            assert abs(row.mu_join - row.mu_predicted) <= 1e-8
            assert row.delta_actual == row.delta_predicted


def test_verify_z_family_refuses_over_cap():
    with pytest.raises(SizeLimitError):
        lg.verify_z_family(3, 3, 1)


# --- canonical complexes and the d=1 equality ------------------------------------


def test_canonical_equality_examples():
    X = lg.canonical_equality_complex(5, 2)
    assert X.num_vertices == 5 and X.dim == 2
    assert abs(lg.spectral_gap(X, 2) - 1) < 1e-9

    X = lg.canonical_equality_complex(4, 2)
    assert X.dim == 2
    assert abs(lg.spectral_gap(X, 2) - 2) < 1e-9


def test_canonical_dim_equals_k():
    for n in range(2, 9):
        for k in range(n - 1):
            if 2 * (k + 1) - n < 0:
                continue
            assert lg.canonical_equality_complex(n, k).dim == k


def test_canonical_boundary_shapes():
    # pure pair-join when the target gap is zero; full simplex when k = n-1
    assert lg.canonical_equality_complex(4, 1) == lg.join(lg.skeleton(1, 0), lg.skeleton(1, 0))
    assert lg.canonical_equality_complex(4, 3) == lg.full_simplex(3)


def test_canonical_rejects_bad_parameters():
    with pytest.raises(InputError):
        lg.canonical_equality_complex(6, 1)  # target 2(k+1)-n < 0
    with pytest.raises(InputError):
        lg.canonical_equality_complex(3, 3)  # k > n-1


def test_equality_check_on_canonical():
    X = lg.canonical_equality_complex(5, 2)
    verdict = lg.equality_case_check(X, 2)
    assert verdict.holds and verdict.target == 1
    assert verdict.witness is not None
    # the witness really maps faces onto faces bijectively
    canonical = lg.canonical_equality_complex(5, 2)
    mapped = {tuple(sorted(verdict.witness[v] for v in f)) for f in X.all_faces()}
    assert mapped == set(canonical.all_faces())


def test_equality_check_all_canonical_up_to_ten_vertices():
    for n in range(2, 11):
        for k in range(-1, n):
            if 2 * (k + 1) - n < 0:
                continue
            X = lg.canonical_equality_complex(n, k)
            verdict = lg.equality_case_check(X, k)
            assert verdict.holds and verdict.witness is not None, (n, k)


def test_equality_check_negative_case():
    verdict = lg.equality_case_check(lg.clique_complex(5, C5_EDGES), 0)
    assert not verdict.holds and verdict.target == -3 and verdict.witness is None


def test_equality_check_shuffled_labels():
    rng = random.Random(23)
    X = lg.canonical_equality_complex(6, 3)
    perm = list(range(6))
    rng.shuffle(perm)
    verdict = lg.equality_case_check(lg.relabel(X, perm), 3)
    assert verdict.holds and verdict.witness is not None


def test_equality_check_requires_clique_complex():
    with pytest.raises(InputError):
        lg.equality_case_check(lg.skeleton(2, 1), 1)  # missing face of dimension 2


def test_equality_check_domain():
    with pytest.raises(DomainError):
        lg.equality_case_check(lg.clique_complex(3, []), 4)


# --- isomorphism -----------------------------------------------------------------


def test_isomorphic_self():
    X = lg.clique_complex(5, C5_EDGES)
    iso = lg.isomorphic(X, X)
    assert iso is not None


def test_isomorphic_different_sizes():
    assert lg.isomorphic(lg.skeleton(2, 1), lg.from_facets(4, [(0, 1), (1, 2), (2, 3)])) is None


def test_isomorphic_four_cycles():
    C4 = lg.clique_complex(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    J = lg.join(lg.skeleton(1, 0), lg.skeleton(1, 0))
    mapping = lg.isomorphic(C4, J)
    assert mapping is not None
    assert {tuple(sorted(mapping[v] for v in f)) for f in C4.all_faces()} == set(
        J.all_faces()
    )


def test_isomorphic_distinguishes_regular_graphs():
    # two 2-regular graphs on six vertices with identical degree data
    C6 = lg.from_facets(6, [(i, (i + 1) % 6) for i in range(6)])
    two_triangles = lg.from_facets(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert C6.f_vector() == two_triangles.f_vector()
    assert lg.isomorphic(C6, two_triangles) is None


def test_isomorphic_symmetric(small_corpus):
    rng = random.Random(31)
    for X in small_corpus[:10]:
        if X.num_vertices > 8:
            continue
        fwd = lg.isomorphic(X, X)
        assert fwd is not None
        perm = list(range(X.n))
        rng.shuffle(perm)
        Y = lg.relabel(X, perm)
        assert lg.isomorphic(X, Y) is not None
        assert lg.isomorphic(Y, X) is not None


def test_isomorphic_cap():
    big = lg.full_simplex(14)
    with pytest.raises(SizeLimitError):
        lg.isomorphic(big, big)


def test_graphs_up_to_isomorphism_counts():
    assert [len(lg.graphs_up_to_isomorphism(n)) for n in range(1, 7)] == [
        1,
        2,
        4,
        11,
        34,
        156,
    ]


# --- the probe --------------------------------------------------------------------


def test_probe_validation():
    with pytest.raises(InputError):
        lg.probe_equality_cases(1, 5)
    with pytest.raises(InputError):
        lg.probe_equality_cases(2, 2)
    with pytest.raises(SizeLimitError):
        lg.probe_equality_cases(2, 12)
    with pytest.raises(InputError):
        lg.probe_equality_cases(2, 5, mode="guess")


def test_probe_exhaustive_n4():
    rep = lg.probe_equality_cases(2, 4)
    assert rep.examined == 20 and rep.complete
    assert len(rep.hits) == 4
    assert all(h.k == 2 and h.target == 1 and h.isomorphic_to_canonical for h in rep.hits)
    assert not rep.counterexamples


def test_probe_finds_canonical_complex_itself():
    # the canonical complex appears among the hits in every exhaustive run
    rep = lg.probe_equality_cases(2, 5)
    assert any(
        h.isomorphic_to_canonical and h.k == 3 and h.target == 2 for h in rep.hits
    )


def test_probe_general_path_matches_fast_path():
    hg, eg, cg = _probe_general(4, 2, None, 1e-7)
    hf, ef, cf = _probe_fast_d2(4, None, 1e-7)
    assert eg == ef == 20 and cg and cf
    assert sorted((h.k, h.facets) for h in hg) == sorted((h.k, h.facets) for h in hf)


def test_probe_general_d3():
    rep = lg.probe_equality_cases(3, 5)
    assert rep.complete and rep.examined == 447
    assert len(rep.hits) == 5
    assert all(h.k == 3 and h.target == 1 and h.isomorphic_to_canonical for h in rep.hits)


def test_probe_budget_cut_marks_incomplete():
    rep = lg.probe_equality_cases(2, 5, budget=100)
    assert rep.examined == 100 and not rep.complete


def test_probe_random_mode_deterministic():
    a = lg.probe_equality_cases(2, 6, mode="random", budget=200, seed=42)
    b = lg.probe_equality_cases(2, 6, mode="random", budget=200, seed=42)
    assert a == b
    assert a.examined == 200 and a.complete
    c = lg.probe_equality_cases(2, 6, mode="random", budget=200, seed=43)
    assert c.examined == 200
