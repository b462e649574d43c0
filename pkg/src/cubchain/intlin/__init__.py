"""Exact integer linear algebra and finitely generated abelian groups."""

from .groups import (
    DirectSum,
    FGAbElement,
    FGAbGroup,
    FGAbHom,
    HomError,
    canonicalize,
    direct_sum,
    hom_equal,
    kernel_of_hom,
)
from .matrix import IntMatrix, block_diag, hstack, kron, vstack
from .normal_forms import (
    ColumnHermite,
    SmithForm,
    column_hermite,
    kernel_basis,
    lattice_basis,
    snf,
    solve_membership,
)

__all__ = [
    "ColumnHermite", "DirectSum", "FGAbElement", "FGAbGroup", "FGAbHom", "HomError",
    "IntMatrix", "SmithForm", "block_diag", "canonicalize", "column_hermite", "direct_sum",
    "hom_equal", "hstack", "kernel_basis", "kernel_of_hom", "kron", "lattice_basis", "snf",
    "solve_membership", "vstack",
]
