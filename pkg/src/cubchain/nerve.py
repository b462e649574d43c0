"""Cellular cubes, the nerve of a chain complex, and normalization.

The cube ``I^n`` has one cell per word over ``0``, ``1``, ``*`` of length
``n``; its dimension is the number of ``*``.  Within a dimension, cells are
ordered as the words appear in ``itertools.product("01*", repeat=n)``.

The nerve of a chain complex ``A`` has ``K_n`` = chain maps from the
cellular chains of ``I^n`` into ``A``.  Its structural maps are
precomposition with cellular face inclusions, projections and max-merges
of two coordinates.  Normalization keeps the elements killed by every face
except the 1-face in direction 1, which becomes the differential.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .chain import ChainComplex, ChainMap, ChainMapSpace, require_valid
from .cubical import (
    CubicalBundle,
    check_morphism_commutes,
    identity_table,
    require_identities,
    structure_keys,
)
from .intlin import FGAbGroup, FGAbHom, IntMatrix, direct_sum, kernel_of_hom
from .report import Report, ValidationError

MAX_CUBE = 6
MAX_NERVE = 4

# max-merge of two adjacent coordinates; None marks a degenerate image
_MAX = {
    ("0", "0"): "0", ("0", "1"): "1", ("1", "0"): "1", ("1", "1"): "1",
    ("0", "*"): "*", ("*", "0"): "*",
    ("1", "*"): None, ("*", "1"): None, ("*", "*"): None,
}


@lru_cache(maxsize=None)
def cube_cells(n: int) -> tuple[tuple[str, ...], ...]:
    """Cells of ``I^n`` grouped by dimension."""
    by_dim: list[list[str]] = [[] for _ in range(n + 1)]
    for w in product("01*", repeat=n):
        word = "".join(w)
        by_dim[word.count("*")].append(word)
    return tuple(tuple(c) for c in by_dim)


def cell_boundary(word: str) -> list[tuple[int, str]]:
    """Signed faces of a cell; the sign flips with each ``*`` passed.

    >>> cell_boundary("*")
    [(1, '1'), (-1, '0')]
    """
    out = []
    stars = 0
    for k, ch in enumerate(word):
        if ch == "*":
            sign = -1 if stars % 2 else 1
            out.append((sign, word[:k] + "1" + word[k + 1:]))
            out.append((-sign, word[:k] + "0" + word[k + 1:]))
            stars += 1
    return out


@dataclass(frozen=True, eq=False)
class CubeComplex(ChainComplex):
    n: int = 0
    cells: tuple = ()

    def index(self, word: str) -> int:
        return self.cells[word.count("*")].index(word)


@lru_cache(maxsize=None)
def cube_complex(n: int) -> CubeComplex:
    """Free cellular chain complex of ``I^n``."""
    if not 0 <= n <= MAX_CUBE:
        raise ValueError(f"cube dimension {n} outside 0..{MAX_CUBE}")
    cells = cube_cells(n)
    groups = tuple(FGAbGroup.free(len(c)) for c in cells)
    bds = []
    for k in range(1, n + 1):
        pos = {w: r for r, w in enumerate(cells[k - 1])}
        rows = [[0] * len(cells[k]) for _ in cells[k - 1]]
        for j, w in enumerate(cells[k]):
            for sign, v in cell_boundary(w):
                rows[pos[v]][j] += sign
        bds.append(FGAbHom(groups[k], groups[k - 1], IntMatrix(rows, len(cells[k - 1]), len(cells[k]))))
    return CubeComplex(groups, tuple(bds), n=n, cells=cells)


def _cell_map(src: int, tgt: int, fn) -> ChainMap:
    S, T = cube_complex(src), cube_complex(tgt)
    comps = []
    for k in range(src + 1):
        rows = T.group(k).generators
        cols = []
        for w in S.cells[k]:
            col = [0] * rows
            img = fn(w)
            if img is not None:
                sign, v = img
                col[T.index(v)] += sign
            cols.append(col)
        comps.append(FGAbHom(S.group(k), T.group(k), IntMatrix.from_columns(cols, rows)))
    return ChainMap(S, T, tuple(comps))


@lru_cache(maxsize=None)
def cellular_operator(kind: str, n: int, i: int, alpha: int | None = None) -> ChainMap:
    """Cellular map inducing the structural map ``kind`` on ``K_n``.

    ``face``: ``Q(n-1) -> Q(n)`` inserts ``alpha`` at slot ``i``.
    ``degeneracy``: ``Q(n) -> Q(n-1)`` deletes slot ``i`` (cells with ``*`` there go to 0).
    ``connection``: ``Q(n+1) -> Q(n)`` merges slots ``i, i+1`` by max.
    """
    if kind == "face":
        if not 1 <= i <= n or alpha not in (0, 1):
            raise ValueError(f"face({i},{alpha}) out of range for n={n}")
        a = str(alpha)
        return _cell_map(n - 1, n, lambda w: (1, w[:i - 1] + a + w[i - 1:]))
    if kind == "degeneracy":
        if not 1 <= i <= n:
            raise ValueError(f"degeneracy({i}) out of range for n={n}")
        return _cell_map(n, n - 1, lambda w: None if w[i - 1] == "*" else (1, w[:i - 1] + w[i:]))
    if kind == "connection":
        if not 1 <= i <= n:
            raise ValueError(f"connection({i}) out of range for n={n}")

        def merge(w):
            m = _MAX[(w[i - 1], w[i])]
            return None if m is None else (1, w[:i - 1] + m + w[i + 1:])
        return _cell_map(n + 1, n, merge)
    raise ValueError(f"unknown cellular operator {kind!r}")


def operator_for_key(key) -> ChainMap:
    kind, n, i = key[0], key[1], key[2]
    if kind == "face":
        return cellular_operator("face", n, i, key[3])
    return cellular_operator({"deg": "degeneracy", "conn": "connection"}[kind], n, i)


def check_cell_identities(N: int) -> Report:
    """Chain-map property of every operator and the identity table at cell level.

    A bundle composite applied left to right corresponds to the composite of
    the cellular maps in the same order written right to left.
    """
    r = Report()
    for key in structure_keys(N + 1):
        r.extend(operator_for_key(key).validate())
    for inst in identity_table(N):
        sides = []
        for keys in (inst.lhs, inst.rhs):
            acc = cube_complex(inst.degree).identity()
            for key in keys:
                acc = acc @ operator_for_key(key)
            sides.append(acc)
        lhs, rhs = sides
        for k in range(lhs.source.top_degree + 1):
            if lhs[k].matrix != rhs[k].matrix:
                r.add(inst.law, inst.indices, {"cell_degree": k})
                break
    return r


# -- the nerve -----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class NerveBundle(CubicalBundle):
    complex: ChainComplex = None
    spaces: tuple = ()


def nerve(A: ChainComplex, N: int) -> NerveBundle:
    if not 0 <= N <= MAX_NERVE:
        raise ValueError(f"nerve top degree {N} outside 0..{MAX_NERVE}")
    require_valid(A)
    spaces = [ChainMapSpace(cube_complex(n), A) for n in range(N + 1)]
    ops = {}
    for key in structure_keys(N):
        kind, n = key[0], key[1]
        phi = operator_for_key(key)
        if kind == "face":
            ops[key] = spaces[n].precompose(phi, spaces[n - 1])
        elif kind == "deg":
            ops[key] = spaces[n - 1].precompose(phi, spaces[n])
        else:
            ops[key] = spaces[n].precompose(phi, spaces[n + 1])
    return NerveBundle(N, tuple(s.group for s in spaces), ops, complex=A, spaces=tuple(spaces))


def nerve_map(f: ChainMap, KA: NerveBundle, KB: NerveBundle) -> list[FGAbHom]:
    """The bundle morphism ``nerve(f)``: postcompose each cube map with ``f``."""
    if KA.N != KB.N:
        raise ValueError("nerves of different top degree")
    return [sa.postcompose(f, sb) for sa, sb in zip(KA.spaces, KB.spaces)]


# -- normalization -------------------------------------------------------------------


def normalize_with_inclusions(K: CubicalBundle,
                              validate: bool = True) -> tuple[ChainComplex, list[FGAbHom]]:
    if validate:
        require_identities(K)
    groups, incs, bds = [K.groups[0]], [K.groups[0].identity()], []
    for n in range(1, K.N + 1):
        faces = [K.face(n, i, a) for i in range(1, n + 1) for a in (0, 1) if (i, a) != (1, 1)]
        stack = direct_sum([K.groups[n - 1]] * len(faces))
        Nn, iota = kernel_of_hom(stack.into(faces, source=K.groups[n]))
        groups.append(Nn)
        incs.append(iota)
        bds.append(incs[n - 1].lift(K.face(n, 1, 1) @ iota))
    return ChainComplex(tuple(groups), tuple(bds)), incs


def normalize(K: CubicalBundle, validate: bool = True) -> ChainComplex:
    """Joint kernel of all faces but the 1-face in direction 1, which is the differential."""
    return normalize_with_inclusions(K, validate)[0]


@dataclass(frozen=True, eq=False)
class RoundTrip:
    forward: ChainMap  # A -> normalize(nerve(A))
    backward: ChainMap
    report: Report
    bundle: NerveBundle
    inclusions: tuple


def _eta(A: ChainComplex, K: NerveBundle, incs, n: int) -> FGAbHom:
    # a in A_n goes to the cube map with value a on the top cell and d(a) on
    # the cell 1*...* (the 1-face in direction 1); every other cell gets 0
    space = K.spaces[n]
    Q = space.source
    An = A.group(n)
    d = A.boundary(n)
    cols = []
    for j in range(An.generators):
        mats = []
        for k in range(n + 1):
            h, g = space.shapes[k]
            rows = [[0] * g for _ in range(h)]
            if k == n:
                for r in range(h):
                    rows[r][0] = int(r == j)
            elif k == n - 1:
                c = Q.index("1" + "*" * (n - 1))
                for r, x in enumerate(d.matrix.column(j)):
                    rows[r][c] = x
            mats.append(FGAbHom(Q.group(k), A.group(k), IntMatrix(rows, h, g)))
        vec = space.ambient_vector(ChainMap(Q, space.target, tuple(mats)))
        x = space.inclusion.lift_vector(vec)
        if x is None:  # pragma: no cover - the cube map above is always a chain map
            raise ValidationError(f"generator {j} of degree {n} does not give a cube map")
        cols.append(x)
    to_k = FGAbHom(An, K.groups[n], IntMatrix.from_columns(cols, K.groups[n].generators))
    return incs[n].lift(to_k)


def _evaluate_top(A: ChainComplex, K: NerveBundle, incs, n: int) -> FGAbHom:
    space = K.spaces[n]
    h = A.group(n).generators
    off = space.ambient.offsets[n]  # degree-n block holds exactly the top cell
    rows = [[int(c == off + r) for c in range(space.ambient.group.generators)] for r in range(h)]
    ev = FGAbHom(space.ambient.group, A.group(n), IntMatrix(rows, h, space.ambient.group.generators))
    return ev @ space.inclusion @ incs[n]


def roundtrip_nerve(A: ChainComplex, N: int) -> RoundTrip:
    """The natural isomorphism ``A -> normalize(nerve(A, N))`` and its inverse."""
    require_valid(A)
    if N < A.top_degree:
        raise ValueError(f"max dimension {N} is below the top degree {A.top_degree}")
    A = A.extended(N)
    K = nerve(A, N)
    NK, incs = normalize_with_inclusions(K, validate=False)
    fwd = ChainMap(A, NK, tuple(_eta(A, K, incs, n) for n in range(N + 1)))
    bwd = ChainMap(NK, A, tuple(_evaluate_top(A, K, incs, n) for n in range(N + 1)))
    report = Report()
    for law, m in (("forward", fwd), ("backward", bwd)):
        for v in m.validate():
            report.add(f"{law}:{v.law}", v.indices, v.witness)
    for n in range(N + 1):
        report.expect_equal("inverse:back-forth", (n,), bwd[n] @ fwd[n], A.group(n).identity())
        report.expect_equal("inverse:forth-back", (n,), fwd[n] @ bwd[n], NK.group(n).identity())
    return RoundTrip(fwd, bwd, report, K, tuple(incs))


def check_roundtrip_naturality(f: ChainMap, N: int) -> Report:
    """Naturality square ``normalize(nerve(f)) o eta_A == eta_B o f`` in every degree."""
    RA = roundtrip_nerve(f.source, N)
    RB = roundtrip_nerve(f.target, N)
    F = nerve_map(f, RA.bundle, RB.bundle)
    r = check_morphism_commutes(RA.bundle, RB.bundle, F)
    for n in range(N + 1):
        NF = RB.inclusions[n].lift(F[n] @ RA.inclusions[n])
        r.expect_equal("naturality", (n,), NF @ RA.forward[n], RB.forward[n] @ f[n])
    return r
