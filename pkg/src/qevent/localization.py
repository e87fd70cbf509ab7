"""Covering sieves, overlaps, pasting isomorphisms, cocycle checks, and the
counit evaluation that tests whether an ideal is a Boolean localization.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterable, Optional

from .boolean import (
    BooleanAlgebra,
    DeclaredSubcategory,
    model_arrow,
    model_object,
)
from .core import (
    QuantumEventAlgebra,
    QuantumHom,
    _bits,
    check_axioms,
    enumerate_blocks,
)
from .errors import IllDefined, MalformedInput, NonInjectiveCover
from .colimit import (
    Pointed,
    QuotientAlgebra,
    left_adjoint,
    quotient_structure,
)
from .presheaf import Presheaf, presheaf_from_action


@dataclass(frozen=True)
class Cover:
    """A Boolean frame of L: a quantum hom from a modeled Boolean algebra."""

    frame: BooleanAlgebra
    hom: QuantumHom

    @property
    def is_injective(self) -> bool:
        return self.hom.is_injective

    def apply(self, q: int) -> int:
        return self.hom.apply(q)

    @property
    def image(self) -> frozenset[int]:
        return self.hom.image


@dataclass(frozen=True, eq=False)
class CoveringIdeal:
    """A sieve of Boolean covers: per object, a set of covers closed under
    precomposition with modeled arrows of the declared subcategory."""

    target: QuantumEventAlgebra
    subcat: DeclaredSubcategory
    generators: tuple[Cover, ...]
    per_object: dict[BooleanAlgebra, tuple[Cover, ...]]

    def covers(self) -> tuple[Cover, ...]:
        out = []
        for B in self.subcat.objects:
            out.extend(self.per_object[B])
        return tuple(out)

    def is_sieve_closed(self) -> bool:
        members = {B: set(cs) for B, cs in self.per_object.items()}
        for u in self.subcat.arrows:
            for cover in self.per_object[u.target]:
                composite = Cover(u.source, cover.hom.compose(model_arrow(u)))
                if composite not in members[u.source]:
                    return False
        return True


def covering_ideal(
    L: QuantumEventAlgebra,
    subcat: DeclaredSubcategory,
    generators: Iterable[Cover],
) -> CoveringIdeal:
    """The smallest sieve containing the generating covers."""
    generators = tuple(generators)
    for cover in generators:
        if cover.hom.target != L:
            raise MalformedInput("a generator does not cover the given algebra")
        if cover.frame not in subcat.objects:
            raise MalformedInput("a generator's frame is not a declared object")
    per_object: dict[BooleanAlgebra, set[Cover]] = {B: set() for B in subcat.objects}
    work = list(generators)
    for cover in work:
        per_object[cover.frame].add(cover)
    while work:
        cover = work.pop()
        for u in subcat.arrows_into(cover.frame):
            composite = Cover(u.source, cover.hom.compose(model_arrow(u)))
            if composite not in per_object[u.source]:
                per_object[u.source].add(composite)
                work.append(composite)
    fixed = {
        B: tuple(sorted(per_object[B], key=lambda c: c.hom.mapping))
        for B in subcat.objects
    }
    return CoveringIdeal(L, subcat, generators, fixed)


def blocks_ideal(L: QuantumEventAlgebra, subcat: DeclaredSubcategory) -> CoveringIdeal:
    """The ideal generated by the inclusions of all maximal Boolean subalgebras."""
    return covering_ideal(L, subcat, block_covers(L, subcat))


def block_covers(L: QuantumEventAlgebra, subcat: DeclaredSubcategory) -> tuple[Cover, ...]:
    """One injective cover per block, from the declared object of matching size."""
    covers = []
    by_size = {B.size: B for B in subcat.objects}
    for block in enumerate_blocks(L):
        if len(block) not in by_size:
            raise MalformedInput(
                f"no declared Boolean algebra of size {len(block)} for a block"
            )
        B = by_size[len(block)]
        MB = model_object(B)
        mapping = _block_inclusion(L, block, MB)
        covers.append(Cover(B, QuantumHom(MB, L, mapping)))
    return tuple(covers)


def _block_inclusion(
    L: QuantumEventAlgebra, block: tuple[int, ...], MB: QuantumEventAlgebra
) -> tuple[int, ...]:
    """Identify the block with M(B) by matching atoms, canonically."""
    carrier = set(block)
    block_atoms = sorted(
        x for x in block
        if x != L.bottom and all(y == L.bottom or y == x for y in _bits(L.down[x]) if y in carrier)
    )
    n = len(block_atoms)
    if 1 << n != len(block):
        raise MalformedInput("block is not a Boolean algebra of its atoms")
    mapping = []
    for mask in range(1 << n):
        subset = [block_atoms[i] for i in range(n) if mask >> i & 1]
        if not subset:
            mapping.append(L.bottom)
            continue
        value = subset[0]
        for x in subset[1:]:
            j = L.join(value, x)
            if j is None:
                raise MalformedInput("block atoms lack a join")
            value = j
        mapping.append(value)
    return tuple(mapping)


def ideal_presheaf(ideal: CoveringIdeal) -> Presheaf:
    """The subfunctor of R(L) holding the ideal's covers (points are the
    cover homs, restriction is precomposition)."""
    sets = {B: tuple(c.hom for c in ideal.per_object[B]) for B in ideal.subcat.objects}
    return presheaf_from_action(
        ideal.subcat, sets, lambda u, v: v.compose(model_arrow(u))
    )


def is_epimorphic_family(ideal: CoveringIdeal) -> bool:
    """Joint element-surjectivity of the covers onto L (the concrete
    epimorphy criterion adopted at desk scale)."""
    covered: set[int] = set()
    for cover in ideal.covers():
        covered.update(cover.image)
    return covered == set(ideal.target.elements())


@dataclass(frozen=True, eq=False)
class Overlap:
    """Pullback of two covers: the fibered product with its projections."""

    left: Cover
    right: Cover
    carrier: QuantumEventAlgebra
    pairs: tuple[tuple[int, int], ...]
    to_left: QuantumHom
    to_right: QuantumHom
    trivial: bool

    def commutes(self) -> bool:
        lh, rh = self.left.hom, self.right.hom
        return all(
            lh.apply(self.to_left.apply(i)) == rh.apply(self.to_right.apply(i))
            for i in range(len(self.pairs))
        )


def pullback_overlap(left: Cover, right: Cover, L: QuantumEventAlgebra) -> Overlap:
    """Carrier {(x, y) : psi_B(x) = psi_B'(y)} with componentwise operations."""
    if left.hom.target != L or right.hom.target != L:
        raise MalformedInput("both covers must target the same algebra")
    MB, MC = model_object(left.frame), model_object(right.frame)
    pairs = tuple(
        (x, y)
        for x in MB.elements()
        for y in MC.elements()
        if left.apply(x) == right.apply(y)
    )
    index = {pair: i for i, pair in enumerate(pairs)}
    n = len(pairs)
    up = []
    for x, y in pairs:
        row = 0
        for j, (x2, y2) in enumerate(pairs):
            if MB.leq(x, x2) and MC.leq(y, y2):
                row |= 1 << j
        up.append(row)
    ortho = tuple(index[(MB.ortho_map[x], MC.ortho_map[y])] for x, y in pairs)
    top = index[(MB.top, MC.top)]
    names = tuple(f"({MB.name_of(x)},{MC.name_of(y)})" for x, y in pairs)
    carrier = QuantumEventAlgebra(names, tuple(up), ortho, top, label="overlap")
    to_left = QuantumHom(carrier, MB, tuple(x for x, _ in pairs))
    to_right = QuantumHom(carrier, MC, tuple(y for _, y in pairs))
    trivial = all(
        (x, y) in ((MB.bottom, MC.bottom), (MB.top, MC.top)) for x, y in pairs
    )
    return Overlap(left, right, carrier, pairs, to_left, to_right, trivial)


@dataclass(frozen=True, eq=False)
class PastingIso:
    """Omega_{B,B'} between projection images, for injective covers."""

    overlap: Overlap
    mapping: dict[int, int]  # image of to_right -> image of to_left

    def apply(self, y: int) -> int:
        return self.mapping[y]

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(self.mapping)

    @property
    def codomain(self) -> frozenset[int]:
        return frozenset(self.mapping.values())


def pasting_iso(left: Cover, right: Cover, L: QuantumEventAlgebra) -> PastingIso:
    if not (left.is_injective and right.is_injective):
        raise NonInjectiveCover("pasting isomorphisms are defined for injective covers")
    overlap = pullback_overlap(left, right, L)
    mapping = {
        overlap.to_right.apply(i): overlap.to_left.apply(i)
        for i in range(len(overlap.pairs))
    }
    return PastingIso(overlap, mapping)


@dataclass(frozen=True, eq=False)
class CocycleReport:
    identity_ok: bool
    composition_ok: bool
    inverse_ok: bool
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.identity_ok and self.composition_ok and self.inverse_ok


def check_cocycles(ideal: CoveringIdeal) -> CocycleReport:
    """Verify Omega_{B,B} = 1, Omega_{B,B'} o Omega_{B',B''} = Omega_{B,B''},
    and Omega_{B,B'} = Omega_{B',B}^{-1} over the generating covers.

    The sieve closure contains non-injective composites, which the cocycle
    conditions do not cover; a non-injective generator is an error.
    """
    gens = ideal.generators
    for cover in gens:
        if not cover.is_injective:
            raise NonInjectiveCover("cocycle check requested on a non-injective cover")
    L = ideal.target
    failures = []
    identity_ok = True
    for c in gens:
        omega = pasting_iso(c, c, L)
        if any(omega.apply(y) != y for y in omega.domain):
            identity_ok = False
            failures.append(f"identity fails on {c.frame.label}")

    iso = {(i, j): pasting_iso(gens[i], gens[j], L) for i in range(len(gens)) for j in range(len(gens))}

    inverse_ok = True
    for (i, j), om in iso.items():
        back = iso[(j, i)]
        for y, x in om.mapping.items():
            if back.mapping.get(x) != y:
                inverse_ok = False
                failures.append(f"inverse fails between {i} and {j} at {y}")
                break

    composition_ok = True
    for i, j, k in itertools.product(range(len(gens)), repeat=3):
        om_jk = iso[(j, k)]
        om_ij = iso[(i, j)]
        om_ik = iso[(i, k)]
        for y in om_jk.domain:
            mid = om_jk.apply(y)
            if mid in om_ij.mapping and y in om_ik.mapping:
                if om_ij.apply(mid) != om_ik.apply(y):
                    composition_ok = False
                    failures.append(f"composition fails on ({i},{j},{k}) at {y}")
                    break
    return CocycleReport(identity_ok, composition_ok, inverse_ok, tuple(failures))


@dataclass(frozen=True, eq=False)
class CounitResult:
    quotient: QuotientAlgebra
    values: tuple[int, ...]  # class index -> element of L
    well_defined: bool
    structure_preserving: bool
    injective: bool
    surjective: bool
    order_reflecting: bool
    missing_elements: tuple[str, ...]

    @property
    def is_isomorphism(self) -> bool:
        return (
            self.well_defined
            and self.structure_preserving
            and self.injective
            and self.surjective
            and self.order_reflecting
        )


def counit_eval(ideal: CoveringIdeal) -> CounitResult:
    """Evaluate the counit: the class of (psi_B, q) goes to psi_B(q).

    Checks well-definedness (IllDefined on broken ideal data), structure
    preservation, injectivity, surjectivity, and order reflection; the verdict
    is the conjunction.
    """
    L = ideal.target
    P = ideal_presheaf(ideal)
    Q = left_adjoint(P, require_order=True, label=f"L(S({L.label}))")

    cover_of = {}
    for B in ideal.subcat.objects:
        for c in ideal.per_object[B]:
            cover_of[(B, c.hom)] = c

    values = []
    for cls in Q.classes:
        imgs = {cover_of[(B, p)].apply(q) for B, p, q in cls}
        if len(imgs) != 1:
            raise IllDefined(
                "two equivalent pointed frames evaluate to different elements"
            )
        values.append(imgs.pop())
    values = tuple(values)

    structure = True
    if len(Q.top_classes) != 1 or values[Q.top_classes[0]] != L.top:
        structure = False
    for i in range(Q.n):
        if values[Q.ortho_map[i]] != L.ortho_map[values[i]]:
            structure = False
    for i in range(Q.n):
        for j in _bits(Q.up[i]):
            if not L.leq(values[i], values[j]):
                structure = False

    injective = len(set(values)) == Q.n
    covered = set(values)
    missing = tuple(sorted(L.name_of(x) for x in L.elements() if x not in covered))
    surjective = not missing

    order_reflecting = True
    if injective and surjective:
        back = {v: i for i, v in enumerate(values)}
        for x in L.elements():
            for y in _bits(L.up[x]):
                if not Q.up[back[x]] >> back[y] & 1:
                    order_reflecting = False
    else:
        order_reflecting = False

    return CounitResult(
        Q, values, True, structure, injective, surjective, order_reflecting, missing
    )
