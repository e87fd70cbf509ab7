"""The subobject functor, the quantum truth-values object in tensor form,
the criterion of truth, and measurement-scenario valuation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterable, Optional

from .boolean import (
    BooleanAlgebra,
    BooleanHom,
    DeclaredSubcategory,
    model_arrow,
    model_object,
)
from .core import QuantumEventAlgebra, QuantumHom, _bits
from .errors import MalformedInput, NotLocalized, ScenarioMismatch
from .colimit import QuotientAlgebra, left_adjoint
from .localization import Cover, CoveringIdeal, counit_eval, pasting_iso
from .presheaf import Presheaf, presheaf_from_action


@dataclass(frozen=True)
class Subobject:
    """A subobject of M(B), canonicalized by its image subalgebra: monics with
    equal image are identified, and the inclusion is the representative."""

    algebra: BooleanAlgebra
    image: frozenset[int]

    def sort_key(self):
        return (len(self.image), tuple(sorted(self.image)))

    @property
    def is_identity(self) -> bool:
        return len(self.image) == self.algebra.size

    def contains(self, b: int) -> bool:
        return b in self.image

    def domain(self) -> QuantumEventAlgebra:
        MB = model_object(self.algebra)
        elems = sorted(self.image)
        pos = {x: i for i, x in enumerate(elems)}
        up = tuple(
            sum(1 << pos[y] for y in elems if MB.leq(x, y)) for x in elems
        )
        ortho = tuple(pos[MB.ortho_map[x]] for x in elems)
        names = tuple(MB.name_of(x) for x in elems)
        return QuantumEventAlgebra(names, up, ortho, pos[MB.top], label="dom")

    def inclusion(self) -> QuantumHom:
        return QuantumHom(self.domain(), model_object(self.algebra), tuple(sorted(self.image)))


def identity_subobject(B: BooleanAlgebra) -> Subobject:
    return Subobject(B, frozenset(B.elements()))


def _partitions(items: tuple[int, ...]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for smaller in _partitions(rest):
        for i in range(len(smaller)):
            yield smaller[:i] + [[first] + smaller[i]] + smaller[i + 1 :]
        yield [[first]] + smaller


def subobjects_of(B: BooleanAlgebra) -> tuple[Subobject, ...]:
    """All subobjects of M(B), ordered by image inclusion size then content.

    Subalgebras of a finite Boolean algebra correspond to partitions of the
    atom set; the one-element degenerate algebra cannot embed and so never
    appears.
    """
    atoms = tuple(range(B.n_atoms))
    out = []
    for partition in _partitions(atoms):
        masks = [sum(1 << a for a in part) for part in partition]
        image = set()
        for r in range(len(masks) + 1):
            for combo in itertools.combinations(masks, r):
                image.add(sum(combo))
        out.append(Subobject(B, frozenset(image)))
    return tuple(sorted(set(out), key=lambda s: s.sort_key()))


def subobject_pullback(lam: Subobject, v: BooleanHom) -> Subobject:
    """lam * v: the pullback of a subobject of M(B) along v : B' -> B, which
    is the preimage of its image."""
    if v.target != lam.algebra:
        raise MalformedInput("pullback arrow must land in the subobject's algebra")
    image = frozenset(x for x in v.source.elements() if v.apply(x) in lam.image)
    return Subobject(v.source, image)


def subobject_presheaf(subcat: DeclaredSubcategory) -> Presheaf:
    """The Boolean-frames modeled subobject functor, restricted by pullback."""
    sets = {B: subobjects_of(B) for B in subcat.objects}
    return presheaf_from_action(subcat, sets, lambda u, lam: subobject_pullback(lam, u))


@dataclass(frozen=True, eq=False)
class OmegaAlgebra:
    """The truth-values object: the colimit quotient over pointed subobject
    pairs, with tensor naming lam (x) b per class."""

    subcat: DeclaredSubcategory
    presheaf: Presheaf
    quotient: QuotientAlgebra

    @property
    def unit_classes(self) -> tuple[int, ...]:
        return self.quotient.top_classes

    @property
    def true_class(self) -> int:
        if len(self.quotient.top_classes) != 1:
            raise MalformedInput("the truth object has no single unit class")
        return self.quotient.top_classes[0]

    def tensor_class(self, lam: Subobject, b: int) -> int:
        return self.quotient.class_of((lam.algebra, lam, b))


def build_omega(
    subcat: DeclaredSubcategory, require_order: bool = True
) -> OmegaAlgebra:
    """Colimit of the subobject functor over the declared subcategory.

    With require_order=False only the class partition, ortho, and unit data
    are computed (sufficient for classification); the order pass may raise
    NotAPartialOrder on subcategories that merge too much.
    """
    P = subobject_presheaf(subcat)
    Q = left_adjoint(P, require_order=require_order, label="Omega")
    return OmegaAlgebra(subcat, P, Q)


@dataclass(frozen=True)
class TruthValue:
    class_index: int
    reference_class: int
    is_true: bool
    matches_reference: bool
    in_unit_class: bool


def truth_value(omega: OmegaAlgebra, lam: Subobject, b: int) -> TruthValue:
    """The Omega-class of lam (x) b, with the membership criterion.

    is_true is the image criterion (b in Image(lam)); matches_reference is the
    independent class computation: the class equals the class of the
    identity-subobject presentation of the same proposition.  The two agree on
    every declared pair (verified in tests, not assumed here).
    """
    cls = omega.tensor_class(lam, b)
    ref = omega.tensor_class(identity_subobject(lam.algebra), b)
    return TruthValue(
        class_index=cls,
        reference_class=ref,
        is_true=lam.contains(b),
        matches_reference=cls == ref,
        in_unit_class=cls in omega.unit_classes,
    )


@dataclass(frozen=True, eq=False)
class CharacteristicFamily:
    """The characteristic arrows of a subobject of L along every generating
    cover of a Boolean localization."""

    subobject_image: frozenset[int]
    per_cover: tuple[tuple[Cover, Subobject, tuple[int, ...]], ...]
    overlap_agreement: bool
    reconstructs: bool


def classify_subobject(
    l: QuantumHom, ideal: CoveringIdeal, omega: Optional[OmegaAlgebra] = None
) -> CharacteristicFamily:
    """Pull a monic l : K -> L back along every cover of a localization ideal
    and classify the resulting subobjects in Omega.

    Raises NotLocalized unless the ideal's counit verdict is true.  The
    family is checked for agreement on pasted overlaps and for recovering l's
    image (the pullback-square property at desk scale).
    """
    if not l.is_injective or l.target != ideal.target:
        raise MalformedInput("classification requires a monic into the covered algebra")
    if not counit_eval(ideal).is_isomorphism:
        raise NotLocalized("the ideal is not a Boolean localization")
    if omega is None:
        omega = build_omega(ideal.subcat, require_order=False)

    image_l = l.image
    per_cover = []
    for cover in ideal.generators:
        lam = Subobject(
            cover.frame,
            frozenset(
                b for b in model_object(cover.frame).elements() if cover.apply(b) in image_l
            ),
        )
        classes = tuple(
            omega.tensor_class(lam, b) for b in model_object(cover.frame).elements()
        )
        per_cover.append((cover, lam, classes))

    agreement = True
    for (c1, lam1, _), (c2, lam2, _) in itertools.permutations(per_cover, 2):
        if not (c1.is_injective and c2.is_injective):
            continue
        omega_12 = pasting_iso(c1, c2, ideal.target)
        for y, x in omega_12.mapping.items():
            if omega.tensor_class(lam1, x) != omega.tensor_class(lam2, y):
                agreement = False

    recovered: set[int] = set()
    for cover, lam, _ in per_cover:
        for b in lam.image:
            recovered.add(cover.apply(b))
    reconstructs = recovered == set(image_l)

    return CharacteristicFamily(frozenset(image_l), tuple(per_cover), agreement, reconstructs)


@dataclass(frozen=True, eq=False)
class ScenarioReport:
    class_apparatus: int
    class_subobject: int
    class_preparation: int
    chain_holds: bool
    proposition_true: bool

    @property
    def identity_chain(self) -> tuple[int, int, int]:
        return (self.class_apparatus, self.class_subobject, self.class_preparation)


def measurement_scenario(
    subcat: DeclaredSubcategory,
    apparatus_inclusion: BooleanHom,
    c: int,
    b: int,
    omega: Optional[OmegaAlgebra] = None,
) -> ScenarioReport:
    """Valuation of a two-context measurement: an apparatus context C sits
    inside a preparation context B via an injective hom, the counter
    proposition c in M(C) corresponds to b in M(B), and the report states the
    three-way class identity id_{M(C)} (x) c = lam (x) b = id_{M(B)} (x) b
    together with the inferred truth of the target proposition.
    """
    u = apparatus_inclusion
    if not model_arrow(u).is_injective:
        raise MalformedInput("the apparatus context must include injectively")
    if u not in subcat.arrows:
        raise MalformedInput("the apparatus inclusion must be a declared arrow")
    if u.apply(c) != b:
        raise ScenarioMismatch(
            f"the apparatus proposition maps to {u.apply(c)}, not {b}"
        )
    if omega is None:
        omega = build_omega(subcat, require_order=False)

    lam = Subobject(u.target, frozenset(u.apply(x) for x in u.source.elements()))
    cls_c = omega.tensor_class(identity_subobject(u.source), c)
    cls_lam = omega.tensor_class(lam, b)
    cls_b = omega.tensor_class(identity_subobject(u.target), b)
    chain = cls_c == cls_lam == cls_b
    return ScenarioReport(
        cls_c, cls_lam, cls_b, chain, chain and cls_c in omega.unit_classes
    )
