"""Chain complexes, crossed complexes and cubical abelian groups with connections.

Everything is computed exactly over finitely generated abelian groups:

>>> from cubchain import FGAbGroup, IntMatrix, ChainComplex, homology
>>> Z = FGAbGroup.free(1)
>>> A = ChainComplex.from_matrices([Z, Z, Z], [IntMatrix([[0]]), IntMatrix([[2]])])
>>> homology(A, 1).invariants()
((2,), 0)
"""

from .chain import (
    ChainComplex,
    ChainMap,
    ChainMapSpace,
    homology,
    random_chain_map,
    random_complex,
    validate_chain,
)
from .crossed import (
    CrossedLevel,
    CrossedMap,
    InternalCrossedComplex,
    act,
    alpha,
    alpha_map,
    beta,
    beta_map,
    compose1,
    counit_iso,
    inverse1,
    unit_iso,
    validate_crossed,
)
from .cubical import (
    ComposableTupleSpace,
    CubicalBundle,
    check_groupoid,
    check_interchange,
    check_laws,
    check_morphism_preserves,
    check_transport,
    compose_i,
    constant_bundle,
    inverse_i,
    source_target,
    validate_identities,
)
from .intlin import (
    FGAbElement,
    FGAbGroup,
    FGAbHom,
    IntMatrix,
    SmithForm,
    canonicalize,
    hom_equal,
    kernel_of_hom,
    snf,
    solve_membership,
)
from .nerve import (
    cellular_operator,
    check_cell_identities,
    check_roundtrip_naturality,
    cube_complex,
    nerve,
    nerve_map,
    normalize,
    roundtrip_nerve,
)
from .report import Report, ValidationError, Violation

__version__ = "0.1.0"
