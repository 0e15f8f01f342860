"""Exact verification of the abelianization of symplectic congruence subgroups."""

from .linalg import FinAbPresentation, IntMatrix, ModMatrix, cokernel_structure, mod_reduce, snf
from .symplectic import (
    GeneratorLabel,
    SpLieElement,
    SymplecticElement,
    bms_generator_set,
    elementary_generator,
    is_symplectic,
    omega,
    sp_lie_basis,
)
from .abelianization import (
    Certificate,
    check_certificate,
    generate_certificates,
    phi,
    phi_surjectivity_witnesses,
    verify_commutator_identities,
)

__version__ = "0.1.0"
