"""Presheaves on the declared base category, quantum hom enumeration, the
functor of Boolean frames, Yoneda presheaves, and categories of elements.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Optional

from .boolean import (
    BooleanAlgebra,
    BooleanHom,
    DeclaredSubcategory,
    identity_hom,
    model_arrow,
    model_object,
)
from .core import QuantumEventAlgebra, QuantumHom, _bits, verify_quantum_hom
from .errors import MalformedInput, SizeBound

DEFAULT_SEARCH_LIMIT = int(os.environ.get("QEVENT_SIZE_BOUND", 10_000_000))


def enumerate_quantum_homs(
    source: QuantumEventAlgebra,
    target: QuantumEventAlgebra,
    limit: int = DEFAULT_SEARCH_LIMIT,
) -> tuple[QuantumHom, ...]:
    """All maps preserving 1, ortho, order, and orthogonal joins, canonically
    ordered by their mapping tuple.

    Backtracking assigns ortho pairs together and propagates order and
    orthogonal-join constraints; every candidate passes a final exhaustive
    verification.
    """
    n = source.n
    free_pairs = sum(1 for x in source.elements() if x not in (source.top, source.bottom)) // 2
    if target.n ** max(free_pairs, 0) > limit:
        raise SizeBound(
            f"hom search space {target.n}^{free_pairs} exceeds the configured limit {limit}"
        )

    order = [source.top, source.bottom]
    for x in sorted(source.elements(), key=lambda x: (bin(source.down[x]).count("1"), x)):
        if x not in order:
            order.append(x)
            o = source.ortho_map[x]
            if o not in order:
                order.append(o)

    joins_of: list[tuple[tuple[int, int, int], ...]] = []
    all_joins = []
    for x, y in itertools.combinations(source.elements(), 2):
        if source.orthogonal(x, y):
            j = source.join(x, y)
            if j is not None:
                all_joins.append((x, y, j))
    joins_of = tuple(all_joins)

    mapping: dict[int, int] = {}
    out: list[QuantumHom] = []

    def consistent(x: int, v: int) -> bool:
        for y, w in mapping.items():
            if source.leq(x, y) and not target.leq(v, w):
                return False
            if source.leq(y, x) and not target.leq(w, v):
                return False
        for a, b, j in joins_of:
            if a in mapping or a == x:
                va = mapping.get(a, v if a == x else None)
            else:
                continue
            vb = mapping.get(b, v if b == x else None)
            vj = mapping.get(j, v if j == x else None)
            if va is None or vb is None or vj is None:
                continue
            if target.join(va, vb) != vj:
                return False
        return True

    def assign(x: int, v: int) -> Optional[list[int]]:
        """Assign x -> v and its ortho partner; return keys added or None."""
        added = []
        pairs = ((x, v), (source.ortho_map[x], target.ortho_map[v]))
        for key, val in pairs:
            if key in mapping:
                if mapping[key] != val:
                    for k in added:
                        del mapping[k]
                    return None
            else:
                if not consistent(key, val):
                    for k in added:
                        del mapping[k]
                    return None
                mapping[key] = val
                added.append(key)
        return added

    def search(idx: int) -> None:
        while idx < n and order[idx] in mapping:
            idx += 1
        if idx == n:
            candidate = QuantumHom(source, target, tuple(mapping[x] for x in source.elements()))
            if verify_quantum_hom(candidate):
                out.append(candidate)
            return
        x = order[idx]
        for v in target.elements():
            added = assign(x, v)
            if added is None:
                continue
            search(idx + 1)
            for k in added:
                del mapping[k]

    seeded = assign(source.top, target.top)
    if seeded is not None:
        search(0)
    return tuple(sorted(out, key=lambda h: h.mapping))


@dataclass(frozen=True, eq=False)
class Presheaf:
    """A contravariant finite-set-valued functor on the declared subcategory.

    ``sets`` assigns a canonical tuple of points to every object;
    ``restriction`` assigns, to every declared arrow u: B' -> B, the function
    P(B) -> P(B') as a dict.
    """

    subcat: DeclaredSubcategory
    sets: dict[BooleanAlgebra, tuple[Hashable, ...]]
    restriction: dict[BooleanHom, dict[Hashable, Hashable]]

    def at(self, B: BooleanAlgebra) -> tuple[Hashable, ...]:
        return self.sets[B]

    def restrict(self, u: BooleanHom, p: Hashable) -> Hashable:
        """p . u for u: B' -> B and p in P(B)."""
        return self.restriction[u][p]

    def validate(self) -> None:
        for B in self.subcat.objects:
            ident = identity_hom(B)
            for p in self.sets[B]:
                if self.restrict(ident, p) != p:
                    raise MalformedInput("restriction along an identity is not the identity")
        for u in self.subcat.arrows:
            table = self.restriction[u]
            for p in self.sets[u.target]:
                if table[p] not in self.sets[u.source]:
                    raise MalformedInput("restriction leaves the declared point set")
        for u in self.subcat.arrows:
            for v in self.subcat.arrows:
                if u.target != v.source:
                    continue
                composite = v.compose(u)
                for p in self.sets[v.target]:
                    if self.restrict(composite, p) != self.restrict(u, self.restrict(v, p)):
                        raise MalformedInput("contravariant functoriality fails")


def presheaf_from_action(
    subcat: DeclaredSubcategory,
    sets: dict[BooleanAlgebra, Iterable[Hashable]],
    action: Callable[[BooleanHom, Hashable], Hashable],
) -> Presheaf:
    fixed = {B: tuple(sets[B]) for B in subcat.objects}
    restriction = {
        u: {p: action(u, p) for p in fixed[u.target]} for u in subcat.arrows
    }
    P = Presheaf(subcat, fixed, restriction)
    P.validate()
    return P


def frames_functor(L: QuantumEventAlgebra, subcat: DeclaredSubcategory) -> Presheaf:
    """R(L): B |-> Hom_L(M(B), L), restriction by precomposition."""
    sets = {B: enumerate_quantum_homs(model_object(B), L) for B in subcat.objects}
    return presheaf_from_action(
        subcat, sets, lambda u, v: v.compose(model_arrow(u))
    )


def yoneda_presheaf(B0: BooleanAlgebra, subcat: DeclaredSubcategory) -> Presheaf:
    """y[B0] = Hom_B(-, B0) over the declared arrows."""
    if B0 not in subcat.objects:
        raise MalformedInput("the representing object must be declared")
    sets = {C: subcat.homs(C, B0) for C in subcat.objects}
    return presheaf_from_action(subcat, sets, lambda u, f: f.compose(u))


def constant_presheaf(subcat: DeclaredSubcategory, points: Iterable[Hashable]) -> Presheaf:
    pts = tuple(points)
    sets = {B: pts for B in subcat.objects}
    return presheaf_from_action(subcat, sets, lambda u, p: p)


@dataclass(frozen=True, eq=False)
class ElementsCategory:
    """The split discrete fibration of a presheaf: objects (B, p), arrows
    (B', p') -> (B, p) given by declared u: B' -> B with p . u = p'."""

    presheaf: Presheaf
    objects: tuple[tuple[BooleanAlgebra, Hashable], ...]
    arrows: tuple[tuple[tuple[BooleanAlgebra, Hashable], tuple[BooleanAlgebra, Hashable], BooleanHom], ...]


def category_of_elements(P: Presheaf) -> ElementsCategory:
    objects = tuple((B, p) for B in P.subcat.objects for p in P.at(B))
    arrows = []
    for u in P.subcat.arrows:
        for p in P.at(u.target):
            arrows.append(((u.source, P.restrict(u, p)), (u.target, p), u))
    return ElementsCategory(P, objects, tuple(arrows))


def natural_transformations(P: Presheaf, Q: Presheaf) -> tuple[dict, ...]:
    """All natural families phi_B : P(B) -> Q(B), by exhaustive search with
    per-arrow pruning.  Returned as dicts keyed by (B, p)."""
    if P.subcat is not Q.subcat and P.subcat != Q.subcat:
        raise MalformedInput("presheaves live over different subcategories")
    objects = list(P.subcat.objects)
    slots = [(B, p) for B in objects for p in P.at(B)]

    arrows_by_pair = {}
    for u in P.subcat.arrows:
        arrows_by_pair.setdefault((u.source, u.target), []).append(u)

    out: list[dict] = []
    family: dict = {}

    def consistent_with(slot, value) -> bool:
        B, p = slot
        for u in P.subcat.arrows:
            if u.target == B:
                other = (u.source, P.restrict(u, p))
                if other in family or other == slot:
                    expected = family.get(other, value if other == slot else None)
                    got = Q.restrict(u, value)
                    if expected is not None and got != expected:
                        return False
            if u.source == B:
                for q in P.at(u.target):
                    if P.restrict(u, q) != p:
                        continue
                    other = (u.target, q)
                    if other in family:
                        if Q.restrict(u, family[other]) != value:
                            return False
        return True

    def search(i: int) -> None:
        if i == len(slots):
            out.append(dict(family))
            return
        slot = slots[i]
        B, _ = slot
        for value in Q.at(B):
            if consistent_with(slot, value):
                family[slot] = value
                search(i + 1)
                del family[slot]

    search(0)
    return tuple(out)
