"""Bounded chain complexes of finitely generated abelian groups."""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd
from typing import Mapping, Sequence

from .intlin import (
    DirectSum,
    FGAbGroup,
    FGAbHom,
    IntMatrix,
    block_diag,
    direct_sum,
    hom_equal,
    hstack,
    kernel_of_hom,
    kron,
    vstack,
)
from .report import Report, ValidationError

_TRIVIAL = FGAbGroup.trivial()


@dataclass(frozen=True, eq=False)
class ChainComplex:
    """Groups ``A_0..A_top`` with ``boundaries[n-1] = d_n : A_n -> A_{n-1}``.

    Outside ``0..top`` the complex is zero, so ``group(n)`` and
    ``boundary(n)`` are total functions of ``n >= 0``.
    """

    groups: tuple[FGAbGroup, ...]
    boundaries: tuple[FGAbHom, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(self.groups))
        object.__setattr__(self, "boundaries", tuple(self.boundaries))
        if not self.groups:
            raise ValueError("a chain complex needs at least the degree-0 group")
        if len(self.boundaries) != len(self.groups) - 1:
            raise ValueError(
                f"{len(self.groups)} groups need {len(self.groups) - 1} boundaries, "
                f"got {len(self.boundaries)}")
        for n, d in enumerate(self.boundaries, start=1):
            if d.source != self.groups[n] or d.target != self.groups[n - 1]:
                raise ValueError(f"boundary in degree {n} has the wrong source or target")

    @classmethod
    def from_matrices(cls, groups: Sequence[FGAbGroup],
                      matrices: Sequence[IntMatrix] | Mapping[int, IntMatrix]) -> ChainComplex:
        if isinstance(matrices, Mapping):
            matrices = [matrices[n] for n in range(1, len(groups))]
        bds = [FGAbHom(groups[n], groups[n - 1], m if isinstance(m, IntMatrix) else IntMatrix(m, groups[n - 1].generators, groups[n].generators))
               for n, m in enumerate(matrices, start=1)]
        return cls(tuple(groups), tuple(bds))

    @classmethod
    def zero(cls, top: int = 0) -> ChainComplex:
        return cls((_TRIVIAL,) * (top + 1),
                   tuple(FGAbHom.zero(_TRIVIAL, _TRIVIAL) for _ in range(top)))

    @property
    def top_degree(self) -> int:
        return len(self.groups) - 1

    def group(self, n: int) -> FGAbGroup:
        return self.groups[n] if 0 <= n <= self.top_degree else _TRIVIAL

    def boundary(self, n: int) -> FGAbHom:
        if 1 <= n <= self.top_degree:
            return self.boundaries[n - 1]
        return FGAbHom.zero(self.group(n), self.group(n - 1))

    def extended(self, top: int) -> ChainComplex:
        """The same complex with zero groups appended up to degree ``top``."""
        if top <= self.top_degree:
            return self
        groups = self.groups + (_TRIVIAL,) * (top - self.top_degree)
        bds = self.boundaries + tuple(
            FGAbHom.zero(groups[n], groups[n - 1]) for n in range(self.top_degree + 1, top + 1))
        return ChainComplex(groups, bds)

    def __eq__(self, other):
        if not isinstance(other, ChainComplex):
            return NotImplemented
        return self.groups == other.groups and all(
            a.matrix == b.matrix for a, b in zip(self.boundaries, other.boundaries))

    __hash__ = None

    def identity(self) -> ChainMap:
        return ChainMap(self, self, tuple(g.identity() for g in self.groups))


@dataclass(frozen=True, eq=False)
class ChainMap:
    """Components ``f_n : source_n -> target_n`` for ``0 <= n <= source.top_degree``."""

    source: ChainComplex
    target: ChainComplex
    components: tuple[FGAbHom, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) != self.source.top_degree + 1:
            raise ValueError("a chain map needs one component per source degree")
        for n, f in enumerate(self.components):
            if f.source != self.source.group(n) or f.target != self.target.group(n):
                raise ValueError(f"chain map component {n} has the wrong source or target")

    def __getitem__(self, n: int) -> FGAbHom:
        if 0 <= n < len(self.components):
            return self.components[n]
        return FGAbHom.zero(self.source.group(n), self.target.group(n))

    def __matmul__(self, other: ChainMap) -> ChainMap:
        return ChainMap(other.source, self.target,
                        tuple(self[n] @ other[n] for n in range(other.source.top_degree + 1)))

    def validate(self) -> Report:
        report = Report()
        for n, f in enumerate(self.components):
            bad = f.relation_violations()
            if bad:
                report.add("well-defined", (n,), {"relation": bad[0]})
        for n in range(1, self.source.top_degree + 1):
            report.expect_equal("chain-map", (n,), self.target.boundary(n) @ self[n],
                                self[n - 1] @ self.source.boundary(n))
        return report

    def equals(self, other: ChainMap) -> bool:
        return all(hom_equal(a, b) for a, b in zip(self.components, other.components))

    def is_identity(self) -> bool:
        return all(hom_equal(f, f.source.identity()) for f in self.components)


def validate_chain(A: ChainComplex) -> Report:
    report = Report()
    for n in range(1, A.top_degree + 1):
        bad = A.boundary(n).relation_violations()
        if bad:
            report.add("well-defined", (n,), {"relation": bad[0]})
    for n in range(2, A.top_degree + 1):
        report.expect_zero("dd=0", (n,), A.boundary(n - 1) @ A.boundary(n))
    return report


def require_valid(A: ChainComplex):
    report = validate_chain(A)
    if not report.ok:
        raise ValidationError("invalid chain complex", report)


def homology(A: ChainComplex, n: int) -> FGAbGroup:
    """``Ker d_n / Im d_{n+1}`` as a simplified presentation."""
    if not 0 <= n <= A.top_degree:
        raise ValueError(f"degree {n} outside 0..{A.top_degree}")
    require_valid(A)
    K, iota = kernel_of_hom(A.boundary(n))
    image = iota.lift(A.boundary(n + 1))
    H = FGAbGroup(K.generators, hstack(K.relations, image.matrix))
    return H.simplify()[0]


# -- random test data ------------------------------------------------------------


def random_hom(source: FGAbGroup, target: FGAbGroup, rng: random.Random,
               bound: int = 3) -> FGAbHom:
    """A random well-defined hom between groups presented as sums of cyclics."""
    s_ord, t_ord = source.diagonal_orders(), target.diagonal_orders()
    if s_ord is None or t_ord is None:
        raise ValueError("random_hom needs diagonal presentations")
    rows = []
    for e in t_ord:
        row = []
        for d in s_ord:
            mult = (1 if d == 0 else 0) if e == 0 else e // gcd(d, e)
            row.append(mult * rng.randint(-bound, bound))
        rows.append(row)
    return FGAbHom(source, target, IntMatrix(rows, target.generators, source.generators))


def random_group(rng: random.Random, rank_bound: int, torsion_bound: int) -> FGAbGroup:
    orders = []
    for _ in range(rng.randint(0, rank_bound)):
        if torsion_bound >= 2 and rng.random() < 0.5:
            orders.append(rng.randint(2, torsion_bound))
        else:
            orders.append(0)
    return FGAbGroup.from_orders(orders)


def random_complex(top: int, rank_bound: int = 2, torsion_bound: int = 6,
                   seed: int = 0) -> ChainComplex:
    """A random valid complex; each group is a sum of at most ``rank_bound`` cyclics.

    Each boundary is drawn as a random hom into the kernel of the previous
    boundary followed by the kernel inclusion, so ``dd = 0`` by construction.
    """
    if top < 0 or rank_bound < 0 or torsion_bound < 0:
        raise ValueError("bounds must be nonnegative")
    rng = random.Random(seed)
    groups = [random_group(rng, rank_bound, torsion_bound) for _ in range(top + 1)]
    bds: list[FGAbHom] = []
    for n in range(1, top + 1):
        if n == 1:
            bds.append(random_hom(groups[1], groups[0], rng))
        else:
            K, iota = kernel_of_hom(bds[-1])
            bds.append(iota @ random_hom(groups[n], K, rng))
    return ChainComplex(tuple(groups), tuple(bds))


# -- groups of chain maps ---------------------------------------------------------


def _copies(group: FGAbGroup, k: int) -> FGAbGroup:
    return FGAbGroup(group.generators * k, kron(IntMatrix.identity(k), group.relations))


class ChainMapSpace:
    """The group of chain maps ``source -> target``.

    A family of matrices ``F_k`` is encoded by stacking the columns of each
    ``F_k``; column ``j`` of ``F_k`` is the image of generator ``j`` of
    ``source_k``.  For a free source with a basis of cells this is exactly
    the direct sum over cells ``c`` of ``target_{dim c}``.  The chain maps
    form the kernel of the constraint "well defined and commutes with the
    boundaries" inside that sum.
    """

    def __init__(self, source: ChainComplex, target: ChainComplex):
        self.source = source
        self.target = target
        top = source.top_degree
        self.shapes = [(target.group(k).generators, source.group(k).generators)
                       for k in range(top + 1)]
        self.ambient: DirectSum = direct_sum(
            _copies(target.group(k), source.group(k).generators) for k in range(top + 1))

        blocks = []  # (constraint group, {degree: matrix})
        for k in range(top + 1):
            S, T = source.group(k), target.group(k)
            if S.relations.cols:
                blocks.append((_copies(T, S.relations.cols),
                               {k: kron(S.relations.T, IntMatrix.identity(T.generators))}))
        for k in range(1, top + 1):
            S, T_prev = source.group(k), target.group(k - 1)
            blocks.append((_copies(T_prev, S.generators), {
                k: kron(IntMatrix.identity(S.generators), target.boundary(k).matrix),
                k - 1: -kron(source.boundary(k).matrix.T,
                             IntMatrix.identity(T_prev.generators)),
            }))
        cons = direct_sum(g for g, _ in blocks)
        rows = []
        for g, parts in blocks:
            rows.append(hstack(*(
                parts.get(k, IntMatrix.zeros(g.generators, self.ambient.summands[k].generators))
                for k in range(top + 1))))
        matrix = vstack(*rows, cols=self.ambient.group.generators)
        constraint = FGAbHom(self.ambient.group, cons.group, matrix)
        self.group, self.inclusion = kernel_of_hom(constraint)

    def decode_ambient(self, vec: Sequence[int]) -> list[IntMatrix]:
        out = []
        for (h, g), part in zip(self.shapes, self.ambient.split(vec)):
            out.append(IntMatrix([[part[j * h + i] for j in range(g)] for i in range(h)], h, g))
        return out

    def to_chain_map(self, coords: Sequence[int]) -> ChainMap:
        mats = self.decode_ambient(self.inclusion.matrix.apply(coords))
        return ChainMap(self.source, self.target, tuple(
            FGAbHom(self.source.group(k), self.target.group(k), m) for k, m in enumerate(mats)))

    def ambient_vector(self, f: ChainMap) -> tuple[int, ...]:
        vec: list[int] = []
        for k in range(self.source.top_degree + 1):
            for col in f[k].matrix.columns():
                vec.extend(col)
        return tuple(vec)

    def encode(self, f: ChainMap) -> tuple[int, ...]:
        x = self.inclusion.lift_vector(self.ambient_vector(f))
        if x is None:
            raise ValidationError("not a chain map between these complexes")
        return x

    def _transport(self, other: ChainMapSpace, blocks: list[IntMatrix]) -> FGAbHom:
        amb = FGAbHom(self.ambient.group, other.ambient.group, block_diag(*blocks))
        return other.inclusion.lift(amb @ self.inclusion)

    def precompose(self, phi: ChainMap, other: ChainMapSpace) -> FGAbHom:
        """``F -> F o phi`` for ``phi : other.source -> self.source``."""
        top = max(self.source.top_degree, other.source.top_degree)
        blocks = [kron(phi[k].matrix.T, IntMatrix.identity(self.target.group(k).generators))
                  for k in range(top + 1)]
        return self._transport(other, blocks)

    def postcompose(self, f: ChainMap, other: ChainMapSpace) -> FGAbHom:
        """``F -> f o F`` for ``f : self.target -> other.target``."""
        blocks = [kron(IntMatrix.identity(self.source.group(k).generators), f[k].matrix)
                  for k in range(self.source.top_degree + 1)]
        return self._transport(other, blocks)


def random_chain_map(source: ChainComplex, target: ChainComplex, seed: int = 0,
                     bound: int = 2, space: ChainMapSpace | None = None) -> ChainMap:
    space = space or ChainMapSpace(source, target)
    rng = random.Random(seed)
    coeffs = [rng.randint(-bound, bound) for _ in range(space.group.generators)]
    return space.to_chain_map(coeffs)
