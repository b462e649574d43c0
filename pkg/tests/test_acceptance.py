"""One test per acceptance criterion; each prints a PASS/FAIL line in the terminal summary."""

import functools
import itertools
import random
import time
from pathlib import Path

from cubchain.chain import ChainComplex, homology, random_chain_map, random_complex, random_hom, validate_chain
from cubchain.cli import Document, dispatch, parse_document, serialize_document
from cubchain.crossed import act, alpha, beta, compose1, counit_iso, unit_iso, validate_crossed
from cubchain.cubical import (
    check_groupoid,
    check_interchange,
    check_morphism_preserves,
    check_transport,
    constant_bundle,
    validate_identities,
)
from cubchain.intlin import FGAbGroup, IntMatrix, kernel_of_hom, snf
from cubchain.nerve import (
    cellular_operator,
    check_cell_identities,
    check_roundtrip_naturality,
    cube_complex,
    nerve,
    nerve_map,
    roundtrip_nerve,
)
from acceptance_log import record_criterion
from helpers import rp2_like
from oracles import invariant_factors_by_minors

FIX = Path(__file__).parent / "fixtures"


def criterion(name):
    def wrap(fn):
        @functools.wraps(fn)
        def run():
            start = time.perf_counter()
            ok, detail = False, ""
            try:
                detail = fn() or ""
                ok = True
            except AssertionError as exc:
                detail = f"assertion failed: {exc}"[:200]
                raise
            finally:
                record_criterion(name, ok, f"({time.perf_counter() - start:.1f}s) {detail}")
        return run
    return wrap


@criterion("1 SNF correctness")
def test_criterion_1_snf():
    rng = random.Random(1)
    count = 0
    for _ in range(500):
        m, n = rng.randint(1, 8), rng.randint(1, 8)
        M = IntMatrix([[rng.randint(-50, 50) for _ in range(n)] for _ in range(m)])
        s = snf(M)
        assert s.U @ M @ s.V == s.D
        assert abs(s.U.det()) == 1 and abs(s.V.det()) == 1
        f = s.invariant_factors
        assert all(f[k + 1] % f[k] == 0 for k in range(len(f) - 1))
        assert all(s.D[i, j] == (f[i] if i == j and i < len(f) else 0)
                   for i in range(m) for j in range(n))
        count += 1
    assert invariant_factors_by_minors([[2, 4], [6, 8]]) == [2, 4]
    assert snf(IntMatrix([[2, 4], [6, 8]])).invariant_factors == (2, 4)
    return f"{count} random matrices"


@criterion("2 homology regression")
def test_criterion_2_homology():
    A = rp2_like()
    assert homology(A, 0).invariants() == ((), 1)
    assert homology(A, 1).invariants() == ((2,), 0)
    assert homology(A, 2).invariants() == ((), 0)
    return "H0=Z, H1=Z/2, H2=0"


@criterion("3 chain/crossed round trip")
def test_criterion_3_crossed_round_trip():
    for seed in range(100):
        A = random_complex(1 + seed % 4, seed=seed)
        C = beta(A)
        assert validate_crossed(C).ok, seed
        fwd, bwd = unit_iso(A)
        assert fwd.validate().ok and bwd.validate().ok, seed
        assert (bwd @ fwd).is_identity() and (fwd @ bwd).is_identity(), seed
        F, G = counit_iso(C)
        assert F.validate().ok and G.validate().ok, seed
        assert (F @ G).is_identity() and (G @ F).is_identity(), seed
        AB = alpha(C)
        for n in range(A.top_degree + 1):
            assert AB.group(n).invariants() == A.group(n).invariants(), (seed, n)
    return "100 random complexes, top degree 1..4"


def _beta_two(k, m, G):
    """beta of ``G -(x m)-> G -(x k)-> G``."""
    A = ChainComplex.from_matrices([G, G, G], [IntMatrix([[k]]), IntMatrix([[m]])])
    assert validate_chain(A).ok
    return beta(A)


@criterion("4 composition and action formulas")
def test_criterion_4_formulas():
    cases = 0
    z4 = (FGAbGroup.from_orders([4]), range(4), [(k, m) for k in range(4) for m in range(4) if k * m % 4 == 0])
    z = (FGAbGroup.free(1), range(-3, 4), [(k, 0) for k in range(-2, 3)] + [(0, m) for m in (-2, 1, 3)])
    for G, vals, maps in (z4, z):
        for k, m in maps:
            C = _beta_two(k, m, G)
            C1, C2 = C.group(1), C.group(2)
            for a, b, c in itertools.product(vals, repeat=3):
                lhs = compose1(C, C1.element([a, b]), C1.element([a + k * b, c]))
                assert lhs == C1.element([a, b + c])
                moved = act(C, C2.element([a, b]), C1.element([a, c]))
                assert moved == C2.element([a + k * c, b])
                cc = C1.element([a, c])
                if C.d0(cc) == C.d1(cc):
                    assert act(C, C2.element([a, b]), cc) == C2.element([a, b])
                cases += 1
    return f"{cases} exhaustive cases over Z/4 and Z"


def _nerve_corpus(count):
    """``count`` nerves (N = 1..3) whose top group is nontrivial."""
    seed = 0
    while count:
        N = 1 + seed % 3
        K = nerve(random_complex(N, rank_bound=3, seed=1000 + seed), N)
        if not K.groups[-1].is_trivial():
            yield seed, K
            count -= 1
        seed += 1


@criterion("5 groupoid laws")
def test_criterion_5_groupoid():
    bundles = [constant_bundle(FGAbGroup.from_orders(o), 3) for o in ([0], [4], [2, 0])]
    bundles += [K for _, K in _nerve_corpus(50)]
    checked = 0
    for K in bundles:
        assert validate_identities(K).ok
        for n in range(1, K.N + 1):
            for i in range(1, n + 1):
                rep = check_groupoid(K, n, i)
                assert rep.ok, rep.violations[:2]
                checked += 1
    return f"{len(bundles)} bundles, {checked} (n,i) checks"


@criterion("6 interchange, transport, morphisms")
def test_criterion_6_laws():
    morphisms = 0
    corpus = list(_nerve_corpus(50))
    for seed, K in corpus:
        for n in range(1, K.N + 1):
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    if i != j:
                        assert check_interchange(K, n, i, j).ok, (seed, n, i, j)
                if n <= K.N - 1:
                    assert check_transport(K, n, i).ok, (seed, n, i)
    for seed in range(20):
        N = 1 + seed % 3
        A = random_complex(N, seed=2000 + seed)
        B = random_complex(N, seed=3000 + seed)
        f = random_chain_map(A, B, seed=seed)
        KA, KB = nerve(A, N), nerve(B, N)
        assert check_morphism_preserves(KA, KB, nerve_map(f, KA, KB)).ok, seed
        assert check_morphism_preserves(KA, KA, [G.identity() for G in KA.groups]).ok, seed
        morphisms += 2
    return f"{len(corpus)} nerves, {morphisms} morphisms"


@criterion("7 cellular oracle")
def test_criterion_7_cells():
    ops = 0
    for n in range(1, 5):
        for i in range(1, n + 1):
            maps = [cellular_operator("face", n, i, a) for a in (0, 1)]
            maps += [cellular_operator("degeneracy", n, i), cellular_operator("connection", n, i)]
            for f in maps:
                assert f.validate().ok, (n, i)
                ops += 1
    rep = check_cell_identities(4)
    assert rep.ok, rep.violations[:2]
    for n in range(5):
        Q = cube_complex(n)
        assert homology(Q, 0).invariants() == ((), 1)
        assert all(homology(Q, k).is_trivial() for k in range(1, n + 1))
    return f"{ops} operators, identity table C1-C6 at cell level"


def _torsion_complex(seed):
    rng = random.Random(seed)
    top = 1 + seed % 3
    groups = [FGAbGroup.from_orders([rng.choice([2, 4, 6, 0]) for _ in range(rng.randint(1, 2))])
              for _ in range(top + 1)]
    bds = [random_hom(groups[1], groups[0], rng)]
    for n in range(2, top + 1):
        K, iota = kernel_of_hom(bds[-1])
        bds.append(iota @ random_hom(groups[n], K, rng))
    return ChainComplex(tuple(groups), tuple(bds))


@criterion("8 normalize(nerve(A)) = A")
def test_criterion_8_normalized_nerve():
    seen = set()
    complexes = [_torsion_complex(s) for s in range(30)] + [random_complex(1 + s % 3, seed=s) for s in range(25)]
    for k, A in enumerate(complexes):
        assert validate_chain(A).ok
        for G in A.groups:
            seen.update(G.diagonal_orders() or ())
        R = roundtrip_nerve(A, A.top_degree)
        assert R.report.ok, (k, R.report.violations[:2])
        # the report covers d o eta == eta o d with no sign and both inverse composites
        assert {v.law for v in R.report.violations} == set()
        NA = R.forward.target
        for n in range(A.top_degree + 1):
            assert NA.group(n).invariants() == A.group(n).invariants(), (k, n)
    assert {2, 4, 6} <= seen
    for seed in range(20):
        N = 1 + seed % 3
        A, B = _torsion_complex(100 + seed), _torsion_complex(200 + seed)
        top = max(A.top_degree, B.top_degree)
        f = random_chain_map(A.extended(top), B.extended(top), seed=seed)
        rep = check_roundtrip_naturality(f, top)
        assert rep.ok, (seed, rep.violations[:2])
    return f"{len(complexes)} complexes with Z/2, Z/4, Z/6 summands, 20 naturality squares"


@criterion("9 CLI")
def test_criterion_9_cli():
    docs = [parse_document((FIX / f).read_bytes()) for f in
            ("rp2-like.json", "random-chain.json", "constant-bundle.json", "crossed-beta.json",
             "hom.json", "group-z6.json")]
    for doc in docs:
        text = serialize_document(doc)
        assert serialize_document(parse_document(text)) == text
    contract = [
        (["homology", FIX / "rp2-like.json", "--degree", "1"], 0),
        (["laws", FIX / "constant-bundle.json"], 0),
        (["roundtrip", FIX / "random-chain.json", "--max-dim", "3"], 0),
        (["validate", FIX / "crossed-beta.json"], 0),
        (["validate", FIX / "invalid-chain.json"], 1),
        (["homology", FIX / "invalid-chain.json", "--degree", "1"], 1),
        (["validate", FIX / "malformed.json"], 2),
        (["validate", FIX / "unknown-field.json"], 2),
        (["laws", FIX / "missing-op-bundle.json"], 2),
        (["frobnicate"], 2),
    ]
    for argv, want in contract:
        code, rep = dispatch([str(a) for a in argv])
        assert code == want, (argv, code, rep)
    assert dispatch(["homology", str(FIX / "rp2-like.json"), "--degree", "1"])[1]["invariant_factors"] == [2]
    return f"{len(docs)} round trips, {len(contract)} exit-code cases"
