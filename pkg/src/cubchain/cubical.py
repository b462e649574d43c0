"""Cubical abelian groups with connections and their derived compositions.

Structural maps of a bundle are keyed by tuples:

* ``("face", n, i, a)``: the face ``K_n -> K_{n-1}``, ``1 <= i <= n``, ``a`` in {0, 1};
* ``("deg", n, i)``: the degeneracy ``K_{n-1} -> K_n``, ``1 <= i <= n``;
* ``("conn", n, i)``: the connection ``K_n -> K_{n+1}``, ``1 <= i <= n <= N-1``.

Connections follow the "max" orientation: the 0-faces in directions ``j``
and ``j+1`` of ``conn(j)`` are the identity, the 1-faces are degenerate.

Every law is checked as an equality of homomorphisms on an explicitly
presented group (``K_n`` itself or a subgroup of composable tuples), so a
pass is a proof for all elements and a failure names a generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .intlin import FGAbElement, FGAbGroup, FGAbHom, direct_sum, hom_equal, kernel_of_hom
from .report import Report, ValidationError

Key = tuple


def face(n: int, i: int, a: int) -> Key:
    return ("face", n, i, a)


def deg(n: int, i: int) -> Key:
    return ("deg", n, i)


def conn(n: int, i: int) -> Key:
    return ("conn", n, i)


def key_to_str(key: Key) -> str:
    return ":".join(str(x) for x in key)


def key_from_str(text: str) -> Key:
    parts = text.split(":")
    try:
        kind, nums = parts[0], [int(x) for x in parts[1:]]
    except ValueError:
        raise ValueError(f"bad operator key {text!r}") from None
    if (kind == "face" and len(nums) == 3) or (kind in ("deg", "conn") and len(nums) == 2):
        n, i = nums[0], nums[1]
        if 1 <= i <= n and (kind != "face" or nums[2] in (0, 1)):
            return (kind, *nums)
    raise ValueError(f"bad operator key {text!r}")


def op_degrees(key: Key) -> tuple[int, int]:
    """Source and target degree of the structural map named by ``key``."""
    kind, n = key[0], key[1]
    return {"face": (n, n - 1), "deg": (n - 1, n), "conn": (n, n + 1)}[kind]


def structure_keys(N: int) -> list[Key]:
    keys = []
    for n in range(1, N + 1):
        keys += [face(n, i, a) for i in range(1, n + 1) for a in (0, 1)]
        keys += [deg(n, i) for i in range(1, n + 1)]
    for n in range(1, N):
        keys += [conn(n, i) for i in range(1, n + 1)]
    return keys


@dataclass(frozen=True, eq=False)
class CubicalBundle:
    """Groups ``K_0..K_N`` with faces, degeneracies and connections."""

    N: int
    groups: tuple[FGAbGroup, ...]
    ops: Mapping[Key, FGAbHom]

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(self.groups))
        object.__setattr__(self, "ops", dict(self.ops))
        if len(self.groups) != self.N + 1:
            raise ValueError(f"a bundle of top degree {self.N} needs {self.N + 1} groups")
        want = set(structure_keys(self.N))
        have = set(self.ops)
        if want != have:
            missing, extra = sorted(want - have), sorted(have - want)
            raise ValueError(f"structural maps missing {missing[:3]} / unexpected {extra[:3]}")
        for key, h in self.ops.items():
            s, t = op_degrees(key)
            if h.source != self.groups[s] or h.target != self.groups[t]:
                raise ValueError(f"{key_to_str(key)} has the wrong source or target")

    def face(self, n: int, i: int, a: int) -> FGAbHom:
        return self.ops[face(n, i, a)]

    def deg(self, n: int, i: int) -> FGAbHom:
        return self.ops[deg(n, i)]

    def conn(self, n: int, i: int) -> FGAbHom:
        return self.ops[conn(n, i)]

    def composite(self, keys: Sequence[Key], degree: int) -> FGAbHom:
        """Apply the maps in ``keys`` left to right, starting on ``K_degree``."""
        h = self.groups[degree].identity()
        for key in keys:
            h = self.ops[key] @ h
        return h


def constant_bundle(G: FGAbGroup, N: int) -> CubicalBundle:
    """Every ``K_n = G`` and every structural map the identity."""
    one = G.identity()
    return CubicalBundle(N, (G,) * (N + 1), {k: one for k in structure_keys(N)})


# -- the identity table -----------------------------------------------------------


@dataclass(frozen=True)
class IdentityInstance:
    law: str
    indices: tuple
    degree: int  # degree of the common source
    lhs: tuple[Key, ...]  # applied left to right
    rhs: tuple[Key, ...]


def identity_table(N: int) -> Iterator[IdentityInstance]:
    """Every instance of the cubical identities with connections up to degree ``N``."""
    ab = (0, 1)
    for n in range(2, N + 1):
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                for a in ab:
                    for b in ab:
                        yield IdentityInstance(
                            "C1", (n, i, j, a, b), n,
                            (face(n, j, b), face(n - 1, i, a)),
                            (face(n, i, a), face(n - 1, j - 1, b)))
    for n in range(1, N + 1):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                for a in ab:
                    lhs = (deg(n, j), face(n, i, a))
                    if i < j:
                        rhs = (face(n - 1, i, a), deg(n - 1, j - 1))
                    elif i == j:
                        rhs = ()
                    else:
                        rhs = (face(n - 1, i - 1, a), deg(n - 1, j))
                    yield IdentityInstance("C2", (n, i, j, a), n - 1, lhs, rhs)
    for n in range(2, N + 1):
        for j in range(1, n):
            for i in range(1, j + 1):
                yield IdentityInstance(
                    "C3", (n, i, j), n - 2,
                    (deg(n - 1, j), deg(n, i)),
                    (deg(n - 1, i), deg(n, j + 1)))
    for n in range(1, N - 1):
        for j in range(1, n + 1):
            for i in range(1, j + 1):
                yield IdentityInstance(
                    "C4", (n, i, j), n,
                    (conn(n, j), conn(n + 1, i)),
                    (conn(n, i), conn(n + 1, j + 1)))
    for n in range(1, N):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                lhs = (deg(n, j), conn(n, i))
                if i < j:
                    rhs = (conn(n - 1, i), deg(n + 1, j + 1))
                elif i == j:
                    rhs = (deg(n, i), deg(n + 1, i + 1))
                else:
                    rhs = (conn(n - 1, i - 1), deg(n + 1, j))
                yield IdentityInstance("C5", (n, i, j), n - 1, lhs, rhs)
    for n in range(1, N):
        for j in range(1, n + 1):
            for i in range(1, n + 2):
                for a in ab:
                    lhs = (conn(n, j), face(n + 1, i, a))
                    if i < j:
                        rhs = (face(n, i, a), conn(n - 1, j - 1))
                    elif i in (j, j + 1):
                        rhs = () if a == 0 else (face(n, j, 1), deg(n, j))
                    else:
                        rhs = (face(n, i - 1, a), conn(n - 1, j))
                    yield IdentityInstance("C6", (n, j, i, a), n, lhs, rhs)


def validate_identities(K: CubicalBundle) -> Report:
    report = Report()
    for key, h in sorted(K.ops.items()):
        bad = h.relation_violations()
        if bad:
            report.add("well-defined", key, {"relation": bad[0]})
    for inst in identity_table(K.N):
        report.expect_equal(inst.law, inst.indices, K.composite(inst.lhs, inst.degree),
                            K.composite(inst.rhs, inst.degree))
    return report


def require_identities(K: CubicalBundle):
    report = validate_identities(K)
    if not report.ok:
        raise ValidationError("bundle fails the cubical identities", report)


# -- compositions ------------------------------------------------------------------


def _check_index(K: CubicalBundle, n: int, i: int):
    if not 1 <= i <= n <= K.N:
        raise IndexError(f"direction {i} in degree {n} is out of range for N={K.N}")


def source_target(K: CubicalBundle, n: int, i: int) -> tuple[FGAbHom, FGAbHom]:
    """``s_i = eps_i d^0_i`` and ``t_i = eps_i d^1_i`` as endomorphisms of ``K_n``."""
    _check_index(K, n, i)
    e = K.deg(n, i)
    return e @ K.face(n, i, 0), e @ K.face(n, i, 1)


def compose_i(K: CubicalBundle, n: int, i: int, g: FGAbElement, h: FGAbElement) -> FGAbElement:
    """``g`` followed by ``h`` in direction ``i``: ``g - t_i g + h``."""
    s, t = source_target(K, n, i)
    if K.face(n, i, 1)(g) != K.face(n, i, 0)(h):
        raise ValueError(f"elements are not composable in direction {i}")
    return g - t(g) + h


def inverse_i(K: CubicalBundle, n: int, i: int, g: FGAbElement) -> FGAbElement:
    s, t = source_target(K, n, i)
    return s(g) - g + t(g)


def _comp(K: CubicalBundle, n: int, i: int, g: FGAbHom, h: FGAbHom) -> FGAbHom:
    # composition of hom-valued "elements" sharing a source
    t = source_target(K, n, i)[1]
    return g - t @ g + h


def _composable(report: Report, law: str, idx, K: CubicalBundle, n: int, i: int,
                g: FGAbHom, h: FGAbHom) -> bool:
    return report.expect_equal(law + ":composable", idx, K.face(n, i, 1) @ g, K.face(n, i, 0) @ h)


@dataclass(frozen=True, eq=False)
class ComposableTupleSpace:
    """Tuples in ``K_n`` with ``d^1_dir x_a == d^0_dir x_b`` for each constraint ``(a, b, dir)``."""

    degree: int
    arity: int
    constraints: tuple[tuple[int, int, int], ...]
    group: FGAbGroup
    inclusion: FGAbHom
    components: tuple[FGAbHom, ...]


def composable_tuples(K: CubicalBundle, n: int, arity: int,
                      constraints: Sequence[tuple[int, int, int]]) -> ComposableTupleSpace:
    ds = direct_sum([K.groups[n]] * arity)
    prj = [ds.projection(k) for k in range(arity)]
    diffs = [K.face(n, d, 1) @ prj[a] - K.face(n, d, 0) @ prj[b] for a, b, d in constraints]
    target = direct_sum([K.groups[n - 1]] * len(diffs))
    G, inc = kernel_of_hom(target.into(diffs, source=ds.group))
    return ComposableTupleSpace(n, arity, tuple(constraints), G, inc,
                                tuple(p @ inc for p in prj))


def check_groupoid(K: CubicalBundle, n: int, i: int) -> Report:
    """Unit, inverse and associativity laws of ``o_i`` on ``K_n``, plus the
    idempotence relations between ``s_i`` and ``t_i``."""
    _check_index(K, n, i)
    r = Report()
    idx = (n, i)
    s, t = source_target(K, n, i)
    one = K.groups[n].identity()
    r.expect_equal("groupoid:ss=s", idx, s @ s, s)
    r.expect_equal("groupoid:tt=t", idx, t @ t, t)
    r.expect_equal("groupoid:st=t", idx, s @ t, t)
    r.expect_equal("groupoid:ts=s", idx, t @ s, s)

    if _composable(r, "groupoid:left-unit", idx, K, n, i, s, one):
        r.expect_equal("groupoid:left-unit", idx, _comp(K, n, i, s, one), one)
    if _composable(r, "groupoid:right-unit", idx, K, n, i, one, t):
        r.expect_equal("groupoid:right-unit", idx, _comp(K, n, i, one, t), one)
    inv = s - one + t
    if _composable(r, "groupoid:right-inverse", idx, K, n, i, one, inv):
        r.expect_equal("groupoid:right-inverse", idx, _comp(K, n, i, one, inv), s)
    if _composable(r, "groupoid:left-inverse", idx, K, n, i, inv, one):
        r.expect_equal("groupoid:left-inverse", idx, _comp(K, n, i, inv, one), t)

    T = composable_tuples(K, n, 3, [(0, 1, i), (1, 2, i)])
    g, h, k = T.components
    gh, hk = _comp(K, n, i, g, h), _comp(K, n, i, h, k)
    ok = _composable(r, "groupoid:assoc", idx, K, n, i, gh, k)
    ok &= _composable(r, "groupoid:assoc", idx, K, n, i, g, hk)
    if ok:
        r.expect_equal("groupoid:assoc", idx, _comp(K, n, i, gh, k), _comp(K, n, i, g, hk))
    return r


def check_interchange(K: CubicalBundle, n: int, i: int, j: int) -> Report:
    """``(g o_i h) o_j (k o_i l) == (g o_j k) o_i (h o_j l)`` on composable quadruples."""
    if i == j:
        raise ValueError("interchange needs two different directions")
    _check_index(K, n, i)
    _check_index(K, n, j)
    r = Report()
    idx = (n, i, j)
    Q = composable_tuples(K, n, 4, [(0, 1, i), (2, 3, i), (0, 2, j), (1, 3, j)])
    g, h, k, l = Q.components
    gh, kl = _comp(K, n, i, g, h), _comp(K, n, i, k, l)
    gk, hl = _comp(K, n, j, g, k), _comp(K, n, j, h, l)
    ok = _composable(r, "interchange", idx, K, n, j, gh, kl)
    ok &= _composable(r, "interchange", idx, K, n, i, gk, hl)
    if ok:
        r.expect_equal("interchange", idx, _comp(K, n, j, gh, kl), _comp(K, n, i, gk, hl))
    return r


def check_transport(K: CubicalBundle, n: int, i: int) -> Report:
    """``conn_i(g o_i h) == (conn_i g o_{i+1} eps_i h) o_i conn_i h`` on composable pairs."""
    if not 1 <= i <= n <= K.N - 1:
        raise IndexError(f"transport needs 1 <= i <= n <= N-1, got n={n}, i={i}")
    r = Report()
    idx = (n, i)
    P = composable_tuples(K, n, 2, [(0, 1, i)])
    g, h = P.components
    G, E = K.conn(n, i), K.deg(n + 1, i)
    lhs = G @ _comp(K, n, i, g, h)
    ok = _composable(r, "transport", idx, K, n + 1, i + 1, G @ g, E @ h)
    x = _comp(K, n + 1, i + 1, G @ g, E @ h)
    ok &= _composable(r, "transport", idx, K, n + 1, i, x, G @ h)
    if ok:
        r.expect_equal("transport", idx, lhs, _comp(K, n + 1, i, x, G @ h))
    return r


def check_laws(K: CubicalBundle) -> Report:
    """Identities, groupoid laws, interchange and transport in every degree."""
    r = validate_identities(K)
    for n in range(1, K.N + 1):
        for i in range(1, n + 1):
            r.extend(check_groupoid(K, n, i))
            for j in range(i + 1, n + 1):
                r.extend(check_interchange(K, n, i, j))
            if n <= K.N - 1:
                r.extend(check_transport(K, n, i))
    return r


# -- morphisms ---------------------------------------------------------------------


class NotAMorphism(ValidationError):
    pass


def check_morphism_commutes(K: CubicalBundle, K2: CubicalBundle,
                            F: Sequence[FGAbHom]) -> Report:
    r = Report()
    if K.N != K2.N or len(F) != K.N + 1:
        r.add("morphism:shape", (), None)
        return r
    for n, f in enumerate(F):
        if f.source != K.groups[n] or f.target != K2.groups[n]:
            r.add("morphism:shape", (n,), None)
            return r
        bad = f.relation_violations()
        if bad:
            r.add("well-defined", (n,), {"relation": bad[0]})
    for key in structure_keys(K.N):
        s, t = op_degrees(key)
        r.expect_equal("morphism:commutes", key, F[t] @ K.ops[key], K2.ops[key] @ F[s])
    return r


def check_morphism_preserves(K: CubicalBundle, K2: CubicalBundle,
                             F: Sequence[FGAbHom]) -> Report:
    """A structure-preserving family also preserves every composition ``o_i``.

    Raises ``NotAMorphism`` when ``F`` does not commute with the structural maps.
    """
    pre = check_morphism_commutes(K, K2, F)
    if not pre.ok:
        raise NotAMorphism("family does not commute with the structural maps", pre)
    r = Report()
    for n in range(1, K.N + 1):
        for i in range(1, n + 1):
            P = composable_tuples(K, n, 2, [(0, 1, i)])
            g, h = P.components
            Fg, Fh = F[n] @ g, F[n] @ h
            idx = (n, i)
            if _composable(r, "preserves", idx, K2, n, i, Fg, Fh):
                r.expect_equal("preserves", idx, F[n] @ _comp(K, n, i, g, h),
                               _comp(K2, n, i, Fg, Fh))
    return r


def is_morphism_identity(F: Sequence[FGAbHom]) -> bool:
    return all(hom_equal(f, f.source.identity()) for f in F)
