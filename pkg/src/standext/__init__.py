"""Quasi-hereditary and Koszul structure of graded quiver algebras."""

from .presentation import (
    Arrow,
    PresentationError,
    QuiverPresentation,
    parse_algebra,
    to_json,
    validate,
)
from .algebra import (
    AlgebraElement,
    GradedAlgebra,
    NotFiniteDimensionalError,
    build_algebra,
)
from .modules import (
    GradedMap,
    GradedModule,
    ModuleError,
    cokernel,
    direct_sum,
    dualize,
    hom_basis,
    hom_total,
    image,
    injective,
    is_iso,
    kernel,
    projective,
    radical,
    shift,
    simple,
    socle,
    submodule,
    top,
    trace,
    quotient,
)

__version__ = "0.1.0"
