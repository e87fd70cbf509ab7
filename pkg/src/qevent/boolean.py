"""Finite Boolean event algebras, their homomorphisms, and the modeling functor.

A Boolean algebra is kept in Stone form: elements are bitmasks over the atom
set, so order is subset inclusion and complement is bit complement.  A
homomorphism is determined by its atom images, which must be pairwise
disjoint with join 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .core import QuantumEventAlgebra, QuantumHom  # noqa: F401  (re-export path)
from .errors import MalformedInput, SizeBound

DEFAULT_ATOM_BOUND = 5


@dataclass(frozen=True)
class BooleanAlgebra:
    atom_names: tuple[str, ...]
    label: str = ""

    @property
    def n_atoms(self) -> int:
        return len(self.atom_names)

    @property
    def size(self) -> int:
        return 1 << self.n_atoms

    @property
    def full(self) -> int:
        return self.size - 1

    def elements(self) -> range:
        return range(self.size)

    def complement(self, x: int) -> int:
        return self.full ^ x

    def leq(self, x: int, y: int) -> bool:
        return x | y == y

    def element_name(self, x: int) -> str:
        if x == 0:
            return "0"
        if x == self.full:
            return "1"
        return "+".join(self.atom_names[i] for i in range(self.n_atoms) if x >> i & 1)

    def __repr__(self) -> str:
        return f"BooleanAlgebra({self.label or '2^%d' % self.n_atoms})"


@dataclass(frozen=True)
class BooleanHom:
    source: BooleanAlgebra
    target: BooleanAlgebra
    atom_images: tuple[int, ...]

    def apply(self, x: int) -> int:
        out = 0
        for i in range(self.source.n_atoms):
            if x >> i & 1:
                out |= self.atom_images[i]
        return out

    @property
    def is_injective(self) -> bool:
        seen = set()
        for x in self.source.elements():
            y = self.apply(x)
            if y in seen:
                return False
            seen.add(y)
        return True

    def compose(self, other: "BooleanHom") -> "BooleanHom":
        """self after other (other first)."""
        if other.target != self.source:
            raise MalformedInput("homs are not composable")
        images = tuple(self.apply(img) for img in other.atom_images)
        return BooleanHom(other.source, self.target, images)

    def verify_preservation(self) -> bool:
        """Exhaustive check of 0, 1, complement, and binary join/meet."""
        src, tgt = self.source, self.target
        if self.apply(0) != 0 or self.apply(src.full) != tgt.full:
            return False
        for x in src.elements():
            if self.apply(src.complement(x)) != tgt.complement(self.apply(x)):
                return False
        for x, y in itertools.combinations_with_replacement(src.elements(), 2):
            if self.apply(x | y) != self.apply(x) | self.apply(y):
                return False
            if self.apply(x & y) != self.apply(x) & self.apply(y):
                return False
        return True


def identity_hom(B: BooleanAlgebra) -> BooleanHom:
    return BooleanHom(B, B, tuple(1 << i for i in range(B.n_atoms)))


def boolean_from_atoms(n: int, bound: int = DEFAULT_ATOM_BOUND, label: str = "") -> BooleanAlgebra:
    """The 2^n-element algebra with canonical atom order."""
    if n < 1:
        raise MalformedInput("a Boolean event algebra needs at least one atom")
    if n > bound:
        raise SizeBound(f"{n} atoms exceeds the configured bound of {bound}")
    names = tuple(f"a{i + 1}" for i in range(n))
    return BooleanAlgebra(names, label or f"2^{n}")


def enumerate_boolean_homs(C: BooleanAlgebra, B: BooleanAlgebra) -> tuple[BooleanHom, ...]:
    """All homomorphisms C -> B, canonically ordered.

    A hom is fixed by sending each atom of B's atom set into one slot per atom
    of C; the resulting atom images are pairwise disjoint with join 1.
    """
    m = C.n_atoms
    homs = []
    for assignment in itertools.product(range(m), repeat=B.n_atoms):
        images = [0] * m
        for target_atom, slot in enumerate(assignment):
            images[slot] |= 1 << target_atom
        homs.append(BooleanHom(C, B, tuple(images)))
    return tuple(sorted(homs, key=lambda h: h.atom_images))


@dataclass(frozen=True)
class DeclaredSubcategory:
    """A finite generated piece of the base category: the objects and arrows
    in play for one computation.  Arrows always include all identities and
    must be closed under composition.
    """

    objects: tuple[BooleanAlgebra, ...]
    arrows: tuple[BooleanHom, ...]

    def __post_init__(self):
        objs = set(self.objects)
        for f in self.arrows:
            if f.source not in objs or f.target not in objs:
                raise MalformedInput("arrow endpoints must be declared objects")
        declared = set(self.arrows)
        for B in self.objects:
            if identity_hom(B) not in declared:
                raise MalformedInput(f"identity of {B!r} is not declared")
        for f in self.arrows:
            for g in self.arrows:
                if f.target == g.source and g.compose(f) not in declared:
                    raise MalformedInput("declared arrows are not closed under composition")

    def arrows_into(self, B: BooleanAlgebra) -> tuple[BooleanHom, ...]:
        return tuple(f for f in self.arrows if f.target == B)

    def homs(self, C: BooleanAlgebra, B: BooleanAlgebra) -> tuple[BooleanHom, ...]:
        return tuple(f for f in self.arrows if f.source == C and f.target == B)


def full_subcategory(objects: Sequence[BooleanAlgebra]) -> DeclaredSubcategory:
    """The subcategory with every homomorphism between the given objects."""
    objects = tuple(dict.fromkeys(objects))
    arrows: list[BooleanHom] = []
    for C in objects:
        for B in objects:
            arrows.extend(enumerate_boolean_homs(C, B))
    return DeclaredSubcategory(objects, tuple(arrows))


def subcategory_with_arrows(
    objects: Sequence[BooleanAlgebra], generators: Iterable[BooleanHom]
) -> DeclaredSubcategory:
    """Close the given generating arrows under identities and composition."""
    objects = tuple(dict.fromkeys(objects))
    arrows = {identity_hom(B) for B in objects}
    arrows.update(generators)
    while True:
        new = {
            g.compose(f)
            for f in arrows
            for g in arrows
            if f.target == g.source and g.compose(f) not in arrows
        }
        if not new:
            break
        arrows.update(new)
    ordered = tuple(
        sorted(arrows, key=lambda h: (h.source.atom_names, h.target.atom_names, h.atom_images))
    )
    return DeclaredSubcategory(objects, ordered)


@lru_cache(maxsize=None)
def _model_object(B: BooleanAlgebra) -> QuantumEventAlgebra:
    size = B.size
    up = tuple(sum(1 << y for y in B.elements() if x | y == y) for x in B.elements())
    ortho = tuple(B.complement(x) for x in B.elements())
    names = tuple(B.element_name(x) for x in B.elements())
    return QuantumEventAlgebra(names, up, ortho, top=size - 1, label=f"M({B.label or '?'})")


class ModelingFunctor:
    """The canonical inclusion-style functor from Boolean event algebras into
    quantum event algebras: a Boolean algebra is re-encoded with subset order
    and set complement as ortho; a hom keeps its underlying map.
    """

    def on_object(self, B: BooleanAlgebra) -> QuantumEventAlgebra:
        return _model_object(B)

    def on_arrow(self, f: BooleanHom) -> QuantumHom:
        return QuantumHom(
            self.on_object(f.source),
            self.on_object(f.target),
            tuple(f.apply(x) for x in f.source.elements()),
        )


_MODELING = ModelingFunctor()


def modeling_inclusion() -> ModelingFunctor:
    return _MODELING


def model_object(B: BooleanAlgebra) -> QuantumEventAlgebra:
    return _MODELING.on_object(B)


def model_arrow(f: BooleanHom) -> QuantumHom:
    return _MODELING.on_arrow(f)
