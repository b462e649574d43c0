"""Crossed complexes internal to abelian groups and their chain-complex equivalence.

In dimension 1 a crossed complex is an internal groupoid ``C_1 => C_0`` with
source ``d0``, target ``d1`` and identities ``eps``.  Above dimension 1 each
``C_n`` is a bundle of groups over ``C_0`` (base ``p``, zero section ``eps``)
with boundary ``delta : C_n -> C_{n-1}``.  Internal to abelian groups the
groupoid composition and the action of ``C_1`` are forced, so they are
computed from the structure maps rather than stored.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chain import ChainComplex, ChainMap, require_valid
from .intlin import FGAbElement, FGAbGroup, FGAbHom, direct_sum, hom_equal, kernel_of_hom
from .intlin import block_diag
from .report import Report, ValidationError


@dataclass(frozen=True, eq=False)
class CrossedLevel:
    """Dimension ``n >= 1``: ``d0``/``d1`` for ``n == 1``, ``p``/``delta`` for ``n >= 2``."""

    group: FGAbGroup
    eps: FGAbHom
    d0: FGAbHom | None = None
    d1: FGAbHom | None = None
    p: FGAbHom | None = None
    delta: FGAbHom | None = None


@dataclass(frozen=True, eq=False)
class InternalCrossedComplex:
    C0: FGAbGroup
    levels: tuple[CrossedLevel, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        for n, lv in enumerate(self.levels, start=1):
            want = {"d0", "d1"} if n == 1 else {"p", "delta"}
            have = {k for k in ("d0", "d1", "p", "delta") if getattr(lv, k) is not None}
            if have != want:
                raise ValueError(f"level {n} needs exactly {sorted(want)} besides eps")
            shapes = {"eps": (self.C0, lv.group), "d0": (lv.group, self.C0),
                      "d1": (lv.group, self.C0), "p": (lv.group, self.C0),
                      "delta": (lv.group, self.group(n - 1))}
            for k in want | {"eps"}:
                h = getattr(lv, k)
                if (h.source, h.target) != shapes[k]:
                    raise ValueError(f"{k} in level {n} has the wrong source or target")

    @property
    def top_degree(self) -> int:
        return len(self.levels)

    def group(self, n: int) -> FGAbGroup:
        return self.C0 if n == 0 else self.levels[n - 1].group

    def level(self, n: int) -> CrossedLevel:
        if not 1 <= n <= self.top_degree:
            raise IndexError(f"no level {n}")
        return self.levels[n - 1]

    @property
    def d0(self) -> FGAbHom:
        return self.level(1).d0

    @property
    def d1(self) -> FGAbHom:
        return self.level(1).d1

    @property
    def eps(self) -> FGAbHom:
        return self.level(1).eps

    def base(self, n: int) -> FGAbHom:
        """``d0`` in dimension 1, the bundle projection ``p_n`` above."""
        if n == 0:
            return self.C0.identity()
        lv = self.level(n)
        return lv.d0 if n == 1 else lv.p

    def section(self, n: int) -> FGAbHom:
        return self.C0.identity() if n == 0 else self.level(n).eps

    def delta(self, n: int) -> FGAbHom:
        if n < 2:
            raise IndexError("delta is defined from dimension 2")
        return self.level(n).delta


def validate_crossed(C: InternalCrossedComplex) -> Report:
    report = Report()
    for n, lv in enumerate(C.levels, start=1):
        for name in ("eps", "d0", "d1", "p", "delta"):
            h = getattr(lv, name)
            if h is not None:
                bad = h.relation_violations()
                if bad:
                    report.add("well-defined", (n, name), {"relation": bad[0]})
    if C.top_degree == 0:
        return report
    one = C.C0.identity()
    report.expect_equal("X1", (1, "d0"), C.d0 @ C.eps, one)
    report.expect_equal("X1", (1, "d1"), C.d1 @ C.eps, one)
    for n in range(2, C.top_degree + 1):
        lv = C.level(n)
        report.expect_equal("X2", (n,), lv.p @ lv.eps, one)
        report.expect_equal("X4", (n, "section"), lv.delta @ lv.eps, C.section(n - 1))
        if n == 2:
            report.expect_equal("X3", (2, "d0"), C.d0 @ lv.delta, lv.p)
            report.expect_equal("X3", (2, "d1"), C.d1 @ lv.delta, lv.p)
        else:
            report.expect_equal("X4", (n, "base"), C.level(n - 1).p @ lv.delta, lv.p)
            report.expect_equal("X5", (n,), C.delta(n - 1) @ lv.delta,
                                C.section(n - 2) @ lv.p)
    return report


def require_valid_crossed(C: InternalCrossedComplex):
    report = validate_crossed(C)
    if not report.ok:
        raise ValidationError("invalid crossed complex", report)


# -- the two functors --------------------------------------------------------------


def beta(A: ChainComplex) -> InternalCrossedComplex:
    """Crossed complex with ``C_n = A_0 + A_n``: source is the first coordinate,
    target adds the boundary of the second."""
    require_valid(A)
    A0 = A.group(0)
    levels = []
    for n in range(1, A.top_degree + 1):
        ds = direct_sum((A0, A.group(n)))
        pr1, pr2 = ds.projection(0), ds.projection(1)
        eps = ds.injection(0)
        if n == 1:
            levels.append(CrossedLevel(ds.group, eps, d0=pr1, d1=pr1 + A.boundary(1) @ pr2))
        else:
            prev = direct_sum((A0, A.group(n - 1)))
            delta = prev.into([pr1, A.boundary(n) @ pr2])
            levels.append(CrossedLevel(ds.group, eps, p=pr1, delta=delta))
    return InternalCrossedComplex(A0, tuple(levels))


def alpha_with_inclusions(C: InternalCrossedComplex) -> tuple[ChainComplex, list[FGAbHom]]:
    """``alpha C`` together with the inclusions ``(alpha C)_n -> C_n``."""
    require_valid_crossed(C)
    groups, incs, bds = [C.C0], [C.C0.identity()], []
    for n in range(1, C.top_degree + 1):
        K, iota = kernel_of_hom(C.base(n))
        groups.append(K)
        incs.append(iota)
        if n == 1:
            bds.append(C.d1 @ iota)
        else:
            bds.append(incs[n - 1].lift(C.delta(n) @ iota))
    return ChainComplex(tuple(groups), tuple(bds)), incs


def alpha(C: InternalCrossedComplex) -> ChainComplex:
    """Chain complex of the kernels of the base maps, with boundary ``d1`` resp. ``delta``."""
    return alpha_with_inclusions(C)[0]


# -- morphisms ---------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CrossedMap:
    source: InternalCrossedComplex
    target: InternalCrossedComplex
    components: tuple[FGAbHom, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) != self.source.top_degree + 1 or \
                self.source.top_degree != self.target.top_degree:
            raise ValueError("crossed map needs one component per dimension of equal tops")
        for n, f in enumerate(self.components):
            if f.source != self.source.group(n) or f.target != self.target.group(n):
                raise ValueError(f"component {n} has the wrong source or target")

    def __getitem__(self, n):
        return self.components[n]

    def __matmul__(self, other: CrossedMap) -> CrossedMap:
        return CrossedMap(other.source, self.target,
                          tuple(a @ b for a, b in zip(self.components, other.components)))

    def validate(self) -> Report:
        report = Report()
        S, T, F = self.source, self.target, self.components
        for n in range(1, S.top_degree + 1):
            report.expect_equal("commutes:base", (n,), T.base(n) @ F[n], F[0] @ S.base(n))
            report.expect_equal("commutes:section", (n,), F[n] @ S.section(n), T.section(n) @ F[0])
            if n == 1:
                report.expect_equal("commutes:d1", (1,), T.d1 @ F[1], F[0] @ S.d1)
            else:
                report.expect_equal("commutes:delta", (n,), T.delta(n) @ F[n],
                                    F[n - 1] @ S.delta(n))
        return report

    def is_identity(self) -> bool:
        return all(hom_equal(f, f.source.identity()) for f in self.components)


def beta_map(f: ChainMap) -> CrossedMap:
    S, T = beta(f.source), beta(f.target)
    comps = [f[0]] + [
        FGAbHom(S.group(n), T.group(n), block_diag(f[0].matrix, f[n].matrix))
        for n in range(1, S.top_degree + 1)]
    return CrossedMap(S, T, tuple(comps))


def alpha_map(F: CrossedMap) -> ChainMap:
    A, inc_a = alpha_with_inclusions(F.source)
    B, inc_b = alpha_with_inclusions(F.target)
    comps = [F[0]] + [inc_b[n].lift(F[n] @ inc_a[n]) for n in range(1, A.top_degree + 1)]
    return ChainMap(A, B, tuple(comps))


def unit_iso(A: ChainComplex) -> tuple[ChainMap, ChainMap]:
    """Mutually inverse chain maps ``A -> alpha(beta(A))`` (``a -> (0, a)``) and back."""
    C = beta(A)
    AB, incs = alpha_with_inclusions(C)
    fwd, bwd = [A.group(0).identity()], [A.group(0).identity()]
    for n in range(1, A.top_degree + 1):
        ds = direct_sum((A.group(0), A.group(n)))
        fwd.append(incs[n].lift(ds.injection(1)))
        bwd.append(ds.projection(1) @ incs[n])
    return ChainMap(A, AB, tuple(fwd)), ChainMap(AB, A, tuple(bwd))


def counit_iso(C: InternalCrossedComplex) -> tuple[CrossedMap, CrossedMap]:
    """Mutually inverse maps ``beta(alpha(C)) -> C`` and back.

    Forward sends ``(x, b)`` to ``section(x) + b``; backward sends ``c`` to
    ``(base c, c - section(base c))``.
    """
    A, incs = alpha_with_inclusions(C)
    BA = beta(A)
    fwd, bwd = [C.C0.identity()], [C.C0.identity()]
    for n in range(1, C.top_degree + 1):
        ds = direct_sum((C.C0, A.group(n)))
        fwd.append(ds.out_of([C.section(n), incs[n]]))
        base = C.base(n)
        rest = C.group(n).identity() - C.section(n) @ base
        bwd.append(ds.into([base, incs[n].lift(rest)]))
    return CrossedMap(BA, C, tuple(fwd)), CrossedMap(C, BA, tuple(bwd))


# -- the groupoid composition and the action ------------------------------------------


class NotComposable(ValueError):
    pass


def compose1(C: InternalCrossedComplex, c: FGAbElement, c2: FGAbElement) -> FGAbElement:
    """``c`` followed by ``c2`` in the groupoid ``C_1``; needs ``d1 c == d0 c2``."""
    if C.d1(c) != C.d0(c2):
        raise NotComposable("target of the first element differs from source of the second")
    return c + c2 - C.eps(C.d1(c))


def inverse1(C: InternalCrossedComplex, c: FGAbElement) -> FGAbElement:
    return C.eps(C.d0(c)) - c + C.eps(C.d1(c))


def _level_of(C: InternalCrossedComplex, m: FGAbElement) -> int:
    found = [n for n in range(2, C.top_degree + 1) if C.group(n) == m.group]
    if len(found) != 1:
        raise ValueError("cannot infer the dimension of the element; pass n explicitly")
    return found[0]


def act(C: InternalCrossedComplex, m: FGAbElement, c: FGAbElement,
        n: int | None = None) -> FGAbElement:
    """Action of ``c`` in ``C_1`` on ``m`` in ``C_n``: move ``m`` from ``d0 c`` to ``d1 c``."""
    n = _level_of(C, m) if n is None else n
    if n < 2:
        raise ValueError("the action is on dimensions n >= 2")
    sec = C.section(n)
    if C.base(n)(m) != C.d0(c):
        raise NotComposable("element does not lie over the source of the acting element")
    return m - sec(C.d0(c)) + sec(C.d1(c))
