"""qevent: finite quantum event algebras, Boolean frames, localization
functors, truth-value objects, and contextual valuation, at desk scale."""

from .core import (
    AxiomReport,
    GeneratedSubalgebra,
    QuantumEventAlgebra,
    QuantumHom,
    check_axioms,
    enumerate_blocks,
    generated_boolean,
    meet_join,
    paste_blocks,
    quantum_event_algebra,
)
from .boolean import (
    BooleanAlgebra,
    BooleanHom,
    DeclaredSubcategory,
    boolean_from_atoms,
    enumerate_boolean_homs,
    full_subcategory,
    model_arrow,
    model_object,
    modeling_inclusion,
)

__all__ = [
    "AxiomReport",
    "BooleanAlgebra",
    "BooleanHom",
    "DeclaredSubcategory",
    "GeneratedSubalgebra",
    "QuantumEventAlgebra",
    "QuantumHom",
    "boolean_from_atoms",
    "check_axioms",
    "enumerate_blocks",
    "enumerate_boolean_homs",
    "full_subcategory",
    "generated_boolean",
    "meet_join",
    "model_arrow",
    "model_object",
    "modeling_inclusion",
    "paste_blocks",
    "quantum_event_algebra",
]
