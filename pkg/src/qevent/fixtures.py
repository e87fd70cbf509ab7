"""Standard finite algebras used across tests, the CLI, and benchmarks."""

from __future__ import annotations

from .boolean import boolean_from_atoms, model_object
from .core import QuantumEventAlgebra, paste_blocks, quantum_event_algebra


def chain2() -> QuantumEventAlgebra:
    """The two-element Boolean algebra {0, 1}."""
    return quantum_event_algebra(("0", "1"), [(0, 1)], (1, 0), top=1, label="2")


def boolean_qea(n: int) -> QuantumEventAlgebra:
    """The 2^n-element Boolean algebra re-encoded as a quantum event algebra."""
    return model_object(boolean_from_atoms(n))


def mo2() -> QuantumEventAlgebra:
    """Two incomparable blocks sharing only 0 and 1 (the lantern MO2)."""
    return paste_blocks([["a", "a*"], ["b", "b*"]], label="MO2")


def mo3() -> QuantumEventAlgebra:
    """Three-block lantern."""
    return paste_blocks([["a", "a*"], ["b", "b*"], ["c", "c*"]], label="MO3")


def greechie12() -> QuantumEventAlgebra:
    """Two eight-element blocks pasted along the shared atom t (12 elements)."""
    return paste_blocks([["t", "a", "b"], ["t", "c", "d"]], label="G12")


def _mutant(names, leq, ortho, label):
    return quantum_event_algebra(names, leq, ortho, top=names.index("1"), label=label)


def mutant_a() -> QuantumEventAlgebra:
    """u* is not below the declared top, breaking [a] (and its consequences)."""
    return _mutant(
        ("0", "1", "u", "u*"),
        [(0, 2), (2, 1), (0, 3), (0, 1)],
        (1, 0, 3, 2),
        "mutant-a",
    )


def mutant_b() -> QuantumEventAlgebra:
    """Ortho is a bijective 3-cycle on {p, q, r}: not an involution, breaking [b]."""
    return _mutant(
        ("0", "1", "p", "q", "r"),
        [(0, 2), (0, 3), (0, 4), (2, 1), (3, 1), (4, 1)],
        (1, 0, 3, 4, 2),
        "mutant-b",
    )


def mutant_c() -> QuantumEventAlgebra:
    """a v a* tops out at m < 1, breaking [c]."""
    return _mutant(
        ("0", "1", "a", "a*", "m", "m*"),
        [(0, 5), (5, 2), (5, 3), (2, 4), (3, 4), (4, 1)],
        (1, 0, 3, 2, 5, 4),
        "mutant-c",
    )


def mutant_d() -> QuantumEventAlgebra:
    """Two parallel chains 0<a<b<1 and 0<a*<b*<1: order reversal fails, breaking [d]."""
    return _mutant(
        ("0", "1", "a", "b", "a*", "b*"),
        [(0, 2), (2, 3), (3, 1), (0, 4), (4, 5), (5, 1)],
        (1, 0, 4, 5, 2, 3),
        "mutant-d",
    )


def mutant_e() -> QuantumEventAlgebra:
    """The orthogonal pair (a, b) has two minimal upper bounds, breaking [e]."""
    names = ("0", "1", "a", "b", "a*", "b*", "m1", "m2", "m3", "m4")
    leq = [(0, i) for i in range(1, 10)] + [
        (2, 6), (2, 7), (3, 6), (3, 7),
        (2, 5), (3, 4),
        (8, 4), (8, 5), (9, 4), (9, 5),
        (6, 1), (7, 1), (4, 1), (5, 1),
    ]
    ortho = (1, 0, 4, 5, 2, 3, 8, 9, 6, 7)
    return _mutant(names, leq, ortho, "mutant-e")


def mutant_f() -> QuantumEventAlgebra:
    """The hexagon O6: a <= b holds but {a, a*, b, b*} is not distributive,
    breaking exactly [f]."""
    return _mutant(
        ("0", "1", "a", "b", "a*", "b*"),
        [(0, 2), (2, 3), (3, 1), (0, 5), (5, 4), (4, 1)],
        (1, 0, 4, 5, 2, 3),
        "mutant-f",
    )


FIXTURES = {
    "chain2": chain2,
    "2": chain2,
    "boolean2": lambda: boolean_qea(2),
    "boolean3": lambda: boolean_qea(3),
    "mo2": mo2,
    "mo3": mo3,
    "greechie12": greechie12,
}

MUTANTS = {
    "a": mutant_a,
    "b": mutant_b,
    "c": mutant_c,
    "d": mutant_d,
    "e": mutant_e,
    "f": mutant_f,
}
