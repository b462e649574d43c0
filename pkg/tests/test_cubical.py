import random

import pytest
from hypothesis import given, settings, strategies as st

from cubchain.chain import random_complex
from cubchain.cubical import (
    CubicalBundle,
    NotAMorphism,
    check_groupoid,
    check_interchange,
    check_laws,
    check_morphism_commutes,
    check_morphism_preserves,
    check_transport,
    compose_i,
    composable_tuples,
    conn,
    constant_bundle,
    deg,
    face,
    identity_table,
    inverse_i,
    key_from_str,
    key_to_str,
    op_degrees,
    source_target,
    structure_keys,
    validate_identities,
)
from cubchain.intlin import FGAbGroup, FGAbHom, IntMatrix, hom_equal
from cubchain.nerve import nerve
from helpers import hom

Z = FGAbGroup.free(1)
Z2 = FGAbGroup.free(2)


def plane_bundle(eps_rows=((1,), (0,))):
    """``K_0 = Z``, ``K_1 = Z^2`` with both faces ``pr1`` and ``eps = (id, 0)``."""
    pr1 = hom(Z2, Z, [[1, 0]])
    return CubicalBundle(1, (Z, Z2), {face(1, 1, 0): pr1, face(1, 1, 1): pr1,
                                      deg(1, 1): hom(Z, Z2, [list(r) for r in eps_rows])})


@pytest.fixture(scope="module")
def small_nerve():
    return nerve(random_complex(2, seed=4), 3)


# -- keys and construction ------------------------------------------------------------


def test_key_round_trip():
    for key in structure_keys(3):
        assert key_from_str(key_to_str(key)) == key
    assert key_to_str(face(2, 1, 0)) == "face:2:1:0"
    assert op_degrees(deg(2, 1)) == (1, 2) and op_degrees(conn(1, 1)) == (1, 2)


@pytest.mark.parametrize("text", ["face:2:3:0", "face:1:1:2", "conn:0:1", "spin:1:1", "deg:1"])
def test_bad_keys_are_rejected(text):
    with pytest.raises(ValueError):
        key_from_str(text)


def test_bundle_requires_every_structural_map():
    ops = dict(constant_bundle(Z, 2).ops)
    del ops[conn(1, 1)]
    with pytest.raises(ValueError):
        CubicalBundle(2, (Z, Z, Z), ops)


def test_bundle_rejects_wrong_shapes():
    ops = dict(constant_bundle(Z, 1).ops)
    ops[deg(1, 1)] = FGAbHom.zero(Z, Z2)
    with pytest.raises(ValueError):
        CubicalBundle(1, (Z, Z), ops)


def test_identity_table_mentions_every_family():
    laws = {inst.law for inst in identity_table(3)}
    assert laws == {"C1", "C2", "C3", "C4", "C5", "C6"}


# -- identities -----------------------------------------------------------------------


def test_constant_bundle_passes():
    assert validate_identities(constant_bundle(FGAbGroup.from_orders([6, 0]), 3)).ok


def test_doubled_face_fails_c2():
    K = constant_bundle(Z, 2)
    ops = dict(K.ops)
    ops[face(2, 1, 0)] = hom(Z, Z, [[2]])
    rep = validate_identities(CubicalBundle(2, K.groups, ops))
    assert not rep.ok
    c2 = [v for v in rep.violations if v.law == "C2"]
    assert c2 and any(v.indices[:1] == (2,) for v in c2)
    assert all(v.witness is not None for v in rep.violations)


def test_nerve_bundle_passes(small_nerve):
    assert validate_identities(small_nerve).ok


# -- source, target, composition ----------------------------------------------------


def test_constant_bundle_source_target_are_identities():
    K = constant_bundle(Z, 2)
    s, t = source_target(K, 2, 1)
    assert hom_equal(s, Z.identity()) and hom_equal(t, Z.identity())


def test_nerve_source_is_matrix_product(small_nerve):
    s, _ = source_target(small_nerve, 1, 1)
    assert s.matrix == small_nerve.deg(1, 1).matrix @ small_nerve.face(1, 1, 0).matrix


def test_source_target_index_errors():
    K = constant_bundle(Z, 2)
    for n, i in [(1, 2), (3, 1), (1, 0)]:
        with pytest.raises(IndexError):
            source_target(K, n, i)


@pytest.mark.parametrize("n,i", [(1, 1), (2, 1), (2, 2), (3, 2)])
def test_source_target_idempotent_and_absorbing(small_nerve, n, i):
    s, t = source_target(small_nerve, n, i)
    assert hom_equal(s @ s, s) and hom_equal(t @ t, t)
    assert hom_equal(s @ t, t) and hom_equal(t @ s, s)


def test_plane_composition():
    K = plane_bundle()
    g, h = Z2.element([3, 5]), Z2.element([3, -2])
    assert compose_i(K, 1, 1, g, h) == Z2.element([3, 3])
    assert inverse_i(K, 1, 1, g) == Z2.element([3, -5])


def test_plane_rejects_non_composable():
    K = plane_bundle()
    with pytest.raises(ValueError):
        compose_i(K, 1, 1, Z2.element([1, 0]), Z2.element([2, 0]))


def test_constant_bundle_composition():
    K = constant_bundle(Z, 1)
    g = Z.element([4])
    assert compose_i(K, 1, 1, g, g) == g
    with pytest.raises(ValueError):
        compose_i(K, 1, 1, g, Z.element([5]))


def test_right_unit_and_degenerate_inverse(small_nerve):
    K = small_nerve
    rng = random.Random(0)
    G = K.groups[2]
    for _ in range(10):
        g = G.element([rng.randint(-4, 4) for _ in range(G.generators)])
        for i in (1, 2):
            _, t = source_target(K, 2, i)
            assert compose_i(K, 2, i, g, t(g)) == g
        dg = K.deg(2, 1)(K.deg(1, 1)(K.groups[0].element([rng.randint(-4, 4) for _ in range(K.groups[0].generators)])))
        assert inverse_i(K, 2, 1, dg) == dg


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=64, max_size=64), st.integers(1, 3))
def test_double_inverse(coords, n):
    K = nerve(random_complex(2, seed=4), 3)
    G = K.groups[n]
    g = G.element(coords[:G.generators])
    for i in range(1, n + 1):
        assert inverse_i(K, n, i, inverse_i(K, n, i, g)) == g


# -- law checkers ----------------------------------------------------------------------


def test_constant_bundle_passes_all_laws():
    assert check_laws(constant_bundle(FGAbGroup.from_orders([4]), 3)).ok


def test_nerve_passes_all_laws(small_nerve):
    assert check_laws(small_nerve).ok


def test_nerve_interchange_in_degree_two(small_nerve):
    assert check_interchange(small_nerve, 2, 1, 2).ok


def test_interchange_needs_distinct_directions(small_nerve):
    with pytest.raises(ValueError):
        check_interchange(small_nerve, 2, 1, 1)


def test_transport_index_range(small_nerve):
    assert check_transport(small_nerve, 2, 2).ok
    with pytest.raises(IndexError):
        check_transport(small_nerve, 3, 1)


def test_corrupted_degeneracy_breaks_units():
    rep = check_groupoid(plane_bundle(eps_rows=((2,), (0,))), 1, 1)
    assert any(v.law.startswith("groupoid:left-unit") or v.law.startswith("groupoid:right-unit")
               for v in rep.violations)


def test_plane_bundle_groupoid():
    assert check_groupoid(plane_bundle(), 1, 1).ok


def test_composable_space_is_exact(small_nerve):
    K = small_nerve
    P = composable_tuples(K, 2, 2, [(0, 1, 1)])
    g, h = P.components
    assert hom_equal(K.face(2, 1, 1) @ g, K.face(2, 1, 0) @ h)


def test_composition_is_linear_on_pairs(small_nerve):
    K = small_nerve
    P = composable_tuples(K, 2, 2, [(0, 1, 2)])
    rng = random.Random(1)
    vecs = [[rng.randint(-3, 3) for _ in range(P.group.generators)] for _ in range(2)]
    pairs = [[c(P.group.element(v)) for c in P.components] for v in vecs]
    total = [a + b for a, b in zip(*pairs)]
    lhs = compose_i(K, 2, 2, *total)
    rhs = compose_i(K, 2, 2, *pairs[0]) + compose_i(K, 2, 2, *pairs[1])
    assert lhs == rhs


# -- morphisms ---------------------------------------------------------------------------


def test_identity_morphism_preserves(small_nerve):
    F = [G.identity() for G in small_nerve.groups]
    assert check_morphism_preserves(small_nerve, small_nerve, F).ok


def test_non_morphism_is_rejected():
    K = constant_bundle(Z, 2)
    F = [hom(Z, Z, [[1]]), hom(Z, Z, [[2]]), hom(Z, Z, [[1]])]
    assert not check_morphism_commutes(K, K, F).ok
    with pytest.raises(NotAMorphism):
        check_morphism_preserves(K, K, F)
