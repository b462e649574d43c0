"""Finitely generated abelian groups as ``Z^g`` modulo a relation lattice.

A group stores its relation matrix as given (columns span the lattice).
Normal forms of the relation matrix are computed on first use and cached
by the normal-form functions themselves, so repeated queries are cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

from .matrix import IntMatrix, block_diag, hstack, vstack
from .normal_forms import SmithForm, column_hermite, kernel_basis, lattice_basis, snf


class HomError(ValueError):
    """A homomorphism is malformed or two homomorphisms are incompatible."""


@dataclass(frozen=True, eq=False)
class FGAbGroup:
    generators: int
    relations: IntMatrix = None

    def __post_init__(self):
        if self.relations is None:
            object.__setattr__(self, "relations", IntMatrix.zeros(self.generators, 0))
        if self.relations.rows != self.generators:
            raise ValueError(
                f"relation matrix has {self.relations.rows} rows for {self.generators} generators")

    # equality is structural: same generator count and same relation matrix
    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FGAbGroup):
            return NotImplemented
        return self.generators == other.generators and self.relations == other.relations

    def __hash__(self):
        return hash((self.generators, self.relations))

    def __repr__(self):
        tors, free = self.invariants()
        parts = [f"Z/{d}" for d in tors] + ["Z"] * free
        return f"<FGAbGroup {' + '.join(parts) or '0'} on {self.generators} gens>"

    # -- constructors --------------------------------------------------------

    @classmethod
    def free(cls, rank: int) -> FGAbGroup:
        return cls(rank)

    @classmethod
    def trivial(cls) -> FGAbGroup:
        return cls(0)

    @classmethod
    def from_orders(cls, orders: Sequence[int]) -> FGAbGroup:
        """``Z/o_1 + ... + Z/o_k`` with ``o = 0`` meaning a free summand."""
        cols = [[o if i == j else 0 for i in range(len(orders))]
                for j, o in enumerate(orders) if o]
        return cls(len(orders), IntMatrix.from_columns(cols, len(orders)))

    # -- normal forms --------------------------------------------------------

    @property
    def smith(self) -> SmithForm:
        return snf(self.relations)

    @cached_property
    def _moduli(self):
        """Per-generator moduli when every relation involves one generator, else None."""
        mods = [0] * self.generators
        for col in self.relations.columns():
            nz = [(i, x) for i, x in enumerate(col) if x]
            if len(nz) > 1:
                return None
            if nz:
                i, x = nz[0]
                mods[i] = gcd(mods[i], x)
        return tuple(mods)

    def diagonal_orders(self) -> tuple[int, ...] | None:
        """Orders of the generators if the presentation is a direct sum of cyclics."""
        return self._moduli

    def invariants(self) -> tuple[tuple[int, ...], int]:
        """Invariant factors greater than one, and the free rank."""
        s = self.smith
        return tuple(d for d in s.invariant_factors if d != 1), self.generators - s.rank

    def is_isomorphic(self, other: FGAbGroup) -> bool:
        return self.invariants() == other.invariants()

    def is_trivial(self) -> bool:
        return self.invariants() == ((), 0)

    # -- elements ------------------------------------------------------------

    def is_zero_vector(self, v: Sequence[int]) -> bool:
        mods = self._moduli
        if mods is not None:
            return all((x % m == 0) if m else x == 0 for x, m in zip(v, mods))
        s = self.smith
        y = s.U.apply(v)
        r = s.rank
        facs = s.invariant_factors
        return all(y[i] % facs[i] == 0 for i in range(r)) and not any(y[r:])

    def canonical_coords(self, v: Sequence[int]) -> tuple[int, ...]:
        """Unique representative of ``v`` modulo the relations, via Smith coordinates."""
        if len(v) != self.generators:
            raise ValueError(f"{len(v)} coordinates for a group on {self.generators} generators")
        s = self.smith
        y = list(s.U.apply(v))
        for i, d in enumerate(s.invariant_factors):
            y[i] %= d
        return s.U_inv.apply(y)

    def element(self, coords: Sequence[int]) -> FGAbElement:
        return FGAbElement(self, tuple(int(c) for c in coords))

    def zero(self) -> FGAbElement:
        return FGAbElement(self, (0,) * self.generators)

    def gens(self) -> list[FGAbElement]:
        return [self.element([int(i == j) for i in range(self.generators)])
                for j in range(self.generators)]

    def identity(self) -> FGAbHom:
        return FGAbHom(self, self, IntMatrix.identity(self.generators))

    def simplify(self) -> tuple[FGAbGroup, FGAbHom, FGAbHom]:
        """An isomorphic presentation ``Z^k / diag(d_1..d_t)`` with all ``d_i > 1``.

        Returns ``(S, to_self, from_self)`` where ``to_self: S -> self`` and
        ``from_self: self -> S`` are mutually inverse.
        """
        s = self.smith
        r = s.rank
        keep = [i for i in range(self.generators) if i >= r or s.invariant_factors[i] != 1]
        tors = [s.invariant_factors[i] for i in keep if i < r]
        k = len(keep)
        rel = IntMatrix.from_columns(
            [[d if row == j else 0 for row in range(k)] for j, d in enumerate(tors)], k)
        small = FGAbGroup(k, rel)
        to_self = FGAbHom(small, self, s.U_inv.submatrix(None, keep))
        from_self = FGAbHom(self, small, s.U.submatrix(keep, None))
        return small, to_self, from_self


def canonicalize(e: FGAbElement) -> FGAbElement:
    return FGAbElement(e.group, e.group.canonical_coords(e.coords))


@dataclass(frozen=True, eq=False)
class FGAbElement:
    group: FGAbGroup
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.group.generators:
            raise ValueError(
                f"{len(self.coords)} coordinates for a group on {self.group.generators} generators")

    def _check(self, other):
        if not isinstance(other, FGAbElement) or other.group != self.group:
            raise ValueError("elements of different groups")

    def __add__(self, other: FGAbElement) -> FGAbElement:
        self._check(other)
        return FGAbElement(self.group, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: FGAbElement) -> FGAbElement:
        self._check(other)
        return FGAbElement(self.group, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> FGAbElement:
        return FGAbElement(self.group, tuple(-a for a in self.coords))

    def __rmul__(self, k: int) -> FGAbElement:
        return FGAbElement(self.group, tuple(k * a for a in self.coords))

    def is_zero(self) -> bool:
        return self.group.is_zero_vector(self.coords)

    def canonical(self) -> FGAbElement:
        return canonicalize(self)

    def __eq__(self, other):
        if not isinstance(other, FGAbElement):
            return NotImplemented
        return other.group == self.group and (self - other).is_zero()

    def __hash__(self):
        return hash(self.group.canonical_coords(self.coords))

    def __repr__(self):
        return f"FGAbElement({list(self.coords)})"


@dataclass(frozen=True, eq=False)
class FGAbHom:
    """A homomorphism given by a matrix on generators (target gens x source gens)."""

    source: FGAbGroup
    target: FGAbGroup
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.generators, self.source.generators):
            raise HomError(
                f"matrix shape {self.matrix.shape} does not fit "
                f"{self.source.generators} -> {self.target.generators} generators")

    @classmethod
    def zero(cls, source: FGAbGroup, target: FGAbGroup) -> FGAbHom:
        return cls(source, target, IntMatrix.zeros(target.generators, source.generators))

    def __call__(self, x):
        if isinstance(x, FGAbElement):
            if x.group != self.source:
                raise HomError("element is not in the source group")
            return FGAbElement(self.target, self.matrix.apply(x.coords))
        return self.target.element(self.matrix.apply(x))

    def __matmul__(self, other: FGAbHom) -> FGAbHom:
        if not isinstance(other, FGAbHom):
            return NotImplemented
        if other.target != self.source:
            raise HomError("composition of homs with mismatched groups")
        return FGAbHom(other.source, self.target, self.matrix @ other.matrix)

    def _check_parallel(self, other: FGAbHom):
        if self.source != other.source or self.target != other.target:
            raise HomError("homs have different source or target")

    def __add__(self, other: FGAbHom) -> FGAbHom:
        self._check_parallel(other)
        return FGAbHom(self.source, self.target, self.matrix + other.matrix)

    def __sub__(self, other: FGAbHom) -> FGAbHom:
        self._check_parallel(other)
        return FGAbHom(self.source, self.target, self.matrix - other.matrix)

    def __neg__(self) -> FGAbHom:
        return FGAbHom(self.source, self.target, -self.matrix)

    def __rmul__(self, k: int) -> FGAbHom:
        return FGAbHom(self.source, self.target, self.matrix.scale(k))

    def __repr__(self):
        return f"FGAbHom({self.source!r} -> {self.target!r}, {self.matrix.tolist()})"

    def nonzero_generators(self) -> list[int]:
        """Indices of source generators whose image is nonzero in the target."""
        return [j for j, col in enumerate(self.matrix.columns())
                if not self.target.is_zero_vector(col)]

    def is_zero(self) -> bool:
        return not self.nonzero_generators()

    def is_well_defined(self) -> bool:
        return not self.relation_violations()

    def relation_violations(self) -> list[int]:
        """Indices of source relations not sent into the target relation lattice."""
        image = self.matrix @ self.source.relations
        return [j for j, col in enumerate(image.columns()) if not self.target.is_zero_vector(col)]

    @cached_property
    def _lift_solver(self):
        return column_hermite(hstack(self.matrix, self.target.relations))

    def lift(self, h: FGAbHom) -> FGAbHom:
        """Factor ``h`` through ``self`` (treated as an injection): ``self @ result == h``."""
        if h.target != self.target:
            raise HomError("cannot lift a hom with a different target")
        solver = self._lift_solver
        k = self.source.generators
        cols = []
        for j, col in enumerate(h.matrix.columns()):
            x = solver.solve(col)
            if x is None:
                raise HomError(f"image of generator {j} is not in the subgroup")
            cols.append(x[:k])
        return FGAbHom(h.source, self.source, IntMatrix.from_columns(cols, k))

    def lift_vector(self, v: Sequence[int]) -> tuple[int, ...] | None:
        x = self._lift_solver.solve(v)
        return None if x is None else x[: self.source.generators]


def hom_equal(f: FGAbHom, g: FGAbHom) -> bool:
    f._check_parallel(g)
    return (f - g).is_zero()


def kernel_of_hom(f: FGAbHom) -> tuple[FGAbGroup, FGAbHom]:
    """Kernel of ``f`` as a simplified presented group with its inclusion."""
    bad = f.relation_violations()
    if bad:
        raise HomError(f"hom is not well defined (source relation {bad[0]})")
    g = f.source.generators
    K = kernel_basis(hstack(f.matrix, -f.target.relations))
    B = lattice_basis(K.submatrix(range(g), None))
    # B has full column rank, so each source relation has a unique expression in it
    solver = column_hermite(B)
    rel_cols = []
    for j, col in enumerate(f.source.relations.columns()):
        z = solver.solve(col)
        if z is None:  # pragma: no cover - excluded by well-definedness
            raise HomError(f"source relation {j} is not in the kernel lattice")
        rel_cols.append(z[: B.cols])
    raw = FGAbGroup(B.cols, IntMatrix.from_columns(rel_cols, B.cols))
    small, to_raw, _ = raw.simplify()
    return small, FGAbHom(small, f.source, B @ to_raw.matrix)


@dataclass(frozen=True, eq=False)
class DirectSum:
    summands: tuple[FGAbGroup, ...]
    group: FGAbGroup = field(init=False)
    offsets: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        offsets, total = [], 0
        for s in self.summands:
            offsets.append(total)
            total += s.generators
        rel = block_diag(*(s.relations for s in self.summands)) if self.summands \
            else IntMatrix.zeros(0, 0)
        object.__setattr__(self, "group", FGAbGroup(total, rel))
        object.__setattr__(self, "offsets", tuple(offsets))

    def __len__(self):
        return len(self.summands)

    def injection(self, k: int) -> FGAbHom:
        s = self.summands[k]
        off = self.offsets[k]
        cols = [[int(i == off + j) for i in range(self.group.generators)]
                for j in range(s.generators)]
        return FGAbHom(s, self.group, IntMatrix.from_columns(cols, self.group.generators))

    def projection(self, k: int) -> FGAbHom:
        s = self.summands[k]
        off = self.offsets[k]
        rows = [[int(j == off + i) for j in range(self.group.generators)]
                for i in range(s.generators)]
        return FGAbHom(self.group, s, IntMatrix(rows, s.generators, self.group.generators))

    def into(self, homs: Sequence[FGAbHom], source: FGAbGroup | None = None) -> FGAbHom:
        """The hom ``x -> (h_1 x, ..., h_k x)`` into the sum."""
        if not homs:
            return FGAbHom.zero(source, self.group)
        src = homs[0].source
        for h, s in zip(homs, self.summands):
            if h.source != src or h.target != s:
                raise HomError("component homs do not match the summands")
        return FGAbHom(src, self.group, vstack(*(h.matrix for h in homs)))

    def out_of(self, homs: Sequence[FGAbHom], target: FGAbGroup | None = None) -> FGAbHom:
        """The hom ``(x_1, ..., x_k) -> sum h_i x_i`` out of the sum."""
        if not homs:
            return FGAbHom.zero(self.group, target)
        tgt = homs[0].target
        for h, s in zip(homs, self.summands):
            if h.target != tgt or h.source != s:
                raise HomError("component homs do not match the summands")
        return FGAbHom(self.group, tgt, hstack(*(h.matrix for h in homs)))

    def split(self, coords: Sequence[int]) -> list[tuple[int, ...]]:
        return [tuple(coords[o:o + s.generators]) for o, s in zip(self.offsets, self.summands)]


def direct_sum(groups: Iterable[FGAbGroup]) -> DirectSum:
    return DirectSum(tuple(groups))
