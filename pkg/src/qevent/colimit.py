"""The left adjoint: colimits over categories of elements, realized as
equivalence-class quotients of pointed frames (coequalizer of a coproduct).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Hashable, Iterable, Optional, Sequence

from .boolean import BooleanAlgebra, BooleanHom, model_arrow, model_object
from .core import QuantumEventAlgebra, QuantumHom, _bits, _transitive_closure, verify_quantum_hom
from .errors import InconsistentInput, MalformedInput, NotAPartialOrder
from .presheaf import Presheaf, natural_transformations

Pointed = tuple[BooleanAlgebra, Hashable, int]


def _point_sort_key(p: Hashable):
    if isinstance(p, QuantumHom):
        return ("qhom", p.mapping)
    if isinstance(p, BooleanHom):
        return ("bhom", p.source.atom_names, p.atom_images)
    key = getattr(p, "sort_key", None)
    if key is not None:
        return ("obj",) + tuple(key() if callable(key) else key)
    return ("repr", repr(p))


def _pointed_key(pt: Pointed):
    B, p, q = pt
    return (B.atom_names, B.label, _point_sort_key(p), q)


class _UnionFind:
    def __init__(self, items: Sequence[Hashable]):
        self._parent = {item: item for item in items}

    def find(self, item):
        parent = self._parent
        root = item
        while parent[root] != root:
            root = parent[root]
        while parent[item] != root:
            parent[item], item = root, parent[item]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self._parent[rb] = ra

    def classes(self) -> list[list[Hashable]]:
        groups: dict[Hashable, list[Hashable]] = {}
        for item in self._parent:
            groups.setdefault(self.find(item), []).append(item)
        return list(groups.values())


@dataclass(frozen=True, eq=False)
class QuotientAlgebra:
    """Equivalence classes of pointed frames carrying quantum-event-algebra
    structure.  ``classes[i]`` lists the members (provenance); operations are
    independent of the chosen representative by construction checks.

    ``up`` is None when the caller asked for the raw partition only.
    """

    classes: tuple[frozenset[Pointed], ...]
    representatives: tuple[Pointed, ...]
    ortho_map: tuple[int, ...]
    top_classes: tuple[int, ...]
    up: Optional[tuple[int, ...]]
    degenerate_empty: bool = False
    label: str = ""

    @property
    def n(self) -> int:
        return len(self.classes)

    def class_of(self, pt: Pointed) -> int:
        for i, cls in enumerate(self.classes):
            if pt in cls:
                return i
        raise KeyError(pt)

    def class_name(self, i: int) -> str:
        B, p, q = self.representatives[i]
        return f"[{model_object(B).name_of(q)} @ {B.label or '2^%d' % B.n_atoms}]"

    def as_qea(self) -> QuantumEventAlgebra:
        if self.up is None:
            raise NotAPartialOrder("the quotient carries no partial order")
        if len(self.top_classes) != 1:
            raise MalformedInput("the quotient has no unique unit class")
        names = []
        seen = {}
        for i in range(self.n):
            base = self.class_name(i)
            seen[base] = seen.get(base, 0) + 1
            names.append(base if seen[base] == 1 else f"{base}#{seen[base]}")
        return QuantumEventAlgebra(
            tuple(names), self.up, self.ortho_map, self.top_classes[0], self.label
        )


def generate_equivalence(
    pointed: Sequence[Pointed],
    transitions: Iterable[tuple[BooleanHom, Hashable, Hashable]],
) -> tuple[frozenset[Pointed], ...]:
    """Smallest equivalence containing (p', q') ~ (p, u(q')) for each declared
    transition u : B' -> B carrying the point p of B to the point p' of B'.

    When the points are frame covers, the frame equation psi' = psi o M(u) is
    checked and InconsistentInput raised on violation.
    """
    uf = _UnionFind(pointed)
    index = set(pointed)
    for u, p_target, p_source in transitions:
        if isinstance(p_target, QuantumHom) and isinstance(p_source, QuantumHom):
            if p_target.compose(model_arrow(u)) != p_source:
                raise InconsistentInput(
                    "declared arrow does not satisfy its frame equation"
                )
        Mu = model_arrow(u)
        for q_prime in model_object(u.source).elements():
            a = (u.source, p_source, q_prime)
            b = (u.target, p_target, Mu.apply(q_prime))
            if a not in index or b not in index:
                raise InconsistentInput("transition relates undeclared pointed frames")
            uf.union(a, b)
    classes = [frozenset(c) for c in uf.classes()]
    return tuple(sorted(classes, key=lambda c: min(_pointed_key(pt) for pt in c)))


def quotient_structure(
    partition: Sequence[frozenset[Pointed]],
    require_order: bool = True,
    label: str = "",
) -> QuotientAlgebra:
    """Endow a partition of pointed frames with ortho, unit, and order.

    Ortho and unit follow the quotient rules ||(psi, q)||* = ||(psi, q*)|| and
    1 = ||(psi, 1)||; the order holds between classes presenting comparable
    points in a common frame, closed transitively.  Raises NotAPartialOrder
    when antisymmetry fails (the declared subcategory merges too much), and
    InconsistentInput when ortho is not constant on a class.
    """
    classes = tuple(partition)
    reps = tuple(min(cls, key=_pointed_key) for cls in classes)
    locate: dict[Pointed, int] = {}
    for i, cls in enumerate(classes):
        for pt in cls:
            locate[pt] = i

    ortho = []
    for i, cls in enumerate(classes):
        images = {locate[(B, p, model_object(B).ortho_map[q])] for B, p, q in cls}
        if len(images) != 1:
            raise InconsistentInput("orthocomplement is not constant on a class")
        ortho.append(images.pop())

    tops = sorted(
        {locate[(B, p, model_object(B).top)] for cls in classes for B, p, q in cls
         if (B, p, model_object(B).top) in locate}
    )

    up = None
    if require_order:
        n = len(classes)
        rows = [1 << i for i in range(n)]
        groups: dict[tuple[BooleanAlgebra, Hashable], list[Pointed]] = {}
        for pt in locate:
            groups.setdefault((pt[0], pt[1]), []).append(pt)
        for (B, p), members in groups.items():
            MB = model_object(B)
            for a, b in itertools.permutations(members, 2):
                if MB.leq(a[2], b[2]):
                    rows[locate[a]] |= 1 << locate[b]
        up = _transitive_closure(n, rows)
        for i in range(n):
            for j in _bits(up[i]):
                if j != i and up[j] >> i & 1:
                    raise NotAPartialOrder(
                        "quotient order fails antisymmetry between "
                        f"classes {i} and {j}"
                    )

    return QuotientAlgebra(classes, reps, tuple(ortho), tuple(tops), up, label=label)


def left_adjoint(
    P: Presheaf, require_order: bool = True, label: str = ""
) -> QuotientAlgebra:
    """Colimit of the presheaf's category of elements pushed through the
    modeling functor, as the coequalizer-of-coproduct quotient.

    The empty presheaf yields the initial two-element algebra, reported via
    ``degenerate_empty``.
    """
    pointed: list[Pointed] = []
    for B in P.subcat.objects:
        MB = model_object(B)
        for p in P.at(B):
            pointed.extend((B, p, q) for q in MB.elements())
    if not pointed:
        return QuotientAlgebra((), (), (), (), (), degenerate_empty=True, label=label)
    transitions = [
        (u, p, P.restrict(u, p)) for u in P.subcat.arrows for p in P.at(u.target)
    ]
    partition = generate_equivalence(pointed, transitions)
    return quotient_structure(partition, require_order=require_order, label=label)


def tensor_identity_holds(P: Presheaf, Q: QuotientAlgebra) -> bool:
    """[p . v] (x) q' equals p (x) v(q') as class equality, for all generators."""
    for u in P.subcat.arrows:
        Mu = model_arrow(u)
        for p in P.at(u.target):
            p_prime = P.restrict(u, p)
            for q_prime in model_object(u.source).elements():
                left = Q.class_of((u.source, p_prime, q_prime))
                right = Q.class_of((u.target, p, Mu.apply(q_prime)))
                if left != right:
                    return False
    return True


def enumerate_quotient_homs(
    Q: QuotientAlgebra, L: QuantumEventAlgebra
) -> tuple[tuple[int, ...], ...]:
    """Structure-preserving maps from the quotient into L, as class-index
    tuples.  A quotient without a unique unit admits none; the degenerate
    empty quotient admits exactly the initial map (empty tuple).
    """
    if Q.degenerate_empty:
        return ((),)
    if Q.up is None:
        raise NotAPartialOrder("the quotient carries no partial order")
    if len(Q.top_classes) != 1:
        return ()
    from .presheaf import enumerate_quantum_homs

    return tuple(h.mapping for h in enumerate_quantum_homs(Q.as_qea(), L))


@dataclass(frozen=True, eq=False)
class AdjunctionReport:
    nat_count: int
    hom_count: int
    bijective: bool
    degenerate_empty: bool
    missing: int
    collisions: int


def adjunction_bijection_check(
    P: Presheaf, L: QuantumEventAlgebra
) -> AdjunctionReport:
    """Verify Nat(P, R(L)) ~ Hom_L(L(P), L) through the canonical map sending
    a natural family phi to the cocone p (x) q |-> phi_B(p)(q).
    """
    from .presheaf import frames_functor

    R = frames_functor(L, P.subcat)
    nats = natural_transformations(P, R)
    Q = left_adjoint(P, require_order=True)
    homs = set(enumerate_quotient_homs(Q, L))

    if Q.degenerate_empty:
        bij = len(nats) == 1 and len(homs) == 1
        return AdjunctionReport(len(nats), len(homs), bij, True, 0, 0)

    induced = []
    for phi in nats:
        values: dict[int, int] = {}
        ok = True
        for i, cls in enumerate(Q.classes):
            imgs = {phi[(B, p)].apply(q) for B, p, q in cls}
            if len(imgs) != 1:
                ok = False
                break
            values[i] = imgs.pop()
        if not ok:
            return AdjunctionReport(len(nats), len(homs), False, False, 0, 0)
        induced.append(tuple(values[i] for i in range(Q.n)))

    missing = sum(1 for h in induced if h not in homs)
    collisions = len(induced) - len(set(induced))
    bijective = (
        missing == 0 and collisions == 0 and len(set(induced)) == len(homs)
    )
    return AdjunctionReport(len(nats), len(homs), bijective, False, missing, collisions)


def find_isomorphism(
    Q: QuotientAlgebra, L: QuantumEventAlgebra
) -> Optional[tuple[int, ...]]:
    """A bijective structure map whose inverse also preserves structure, if any."""
    if Q.degenerate_empty or Q.up is None:
        return None
    for mapping in enumerate_quotient_homs(Q, L):
        if len(set(mapping)) != Q.n or Q.n != L.n:
            continue
        inverse = {v: i for i, v in enumerate(mapping)}
        ok = True
        for x in L.elements():
            if L.ortho_map[x] not in inverse or Q.ortho_map[inverse[x]] != inverse[L.ortho_map[x]]:
                ok = False
                break
            for y in _bits(L.up[x]):
                if not Q.up[inverse[x]] >> inverse[y] & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return mapping
    return None
