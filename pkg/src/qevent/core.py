"""Finite quantum event algebras (orthomodular orthoposets) and their validation.

Elements are dense integer indices with stable names; the order relation is
stored as its reflexive-transitive closure in bitmask rows, so every
enumeration is deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import ClosureFailure, MalformedInput

CONDITION_NAMES = ("a", "b", "c", "d", "e", "f")


def _transitive_closure(n: int, rows: list[int]) -> tuple[int, ...]:
    """Reflexive-transitive closure of a relation given as bitmask rows."""
    up = [rows[i] | (1 << i) for i in range(n)]
    for k in range(n):
        bit = 1 << k
        for i in range(n):
            if up[i] & bit:
                up[i] |= up[k]
    return tuple(up)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class QuantumEventAlgebra:
    """A finite orthoposet with top element and orthocomplementation.

    ``up[i]`` is the bitmask of all ``j`` with ``i <= j``; the relation is
    always stored closed.  Construction is permissive: validity is the job of
    :func:`check_axioms`, so malformed structures can be represented and
    reported on.
    """

    names: tuple[str, ...]
    up: tuple[int, ...]
    ortho_map: tuple[int, ...]
    top: int
    label: str = ""

    @property
    def n(self) -> int:
        return len(self.names)

    @cached_property
    def down(self) -> tuple[int, ...]:
        cols = [0] * self.n
        for i, row in enumerate(self.up):
            for j in _bits(row):
                cols[j] |= 1 << i
        return tuple(cols)

    @property
    def bottom(self) -> int:
        return self.ortho_map[self.top]

    def elements(self) -> range:
        return range(self.n)

    def leq(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1)

    def ortho(self, x: int) -> int:
        return self.ortho_map[x]

    def orthogonal(self, x: int, y: int) -> bool:
        """x is orthogonal to y when x <= y*."""
        return self.leq(x, self.ortho_map[y])

    def join(self, x: int, y: int) -> Optional[int]:
        """Least upper bound, or None when the order admits none."""
        common = self.up[x] & self.up[y]
        for i in _bits(common):
            if common & ~self.up[i] == 0:
                return i
        return None

    def meet(self, x: int, y: int) -> Optional[int]:
        common = self.down[x] & self.down[y]
        for i in _bits(common):
            if common & ~self.down[i] == 0:
                return i
        return None

    def atoms(self) -> tuple[int, ...]:
        """Minimal nonzero elements."""
        bot = self.bottom
        out = []
        for x in self.elements():
            if x == bot:
                continue
            if all(y == bot or y == x for y in _bits(self.down[x])):
                out.append(x)
        return tuple(out)

    def name_of(self, x: int) -> str:
        return self.names[x]

    def index_of(self, name: str) -> int:
        return self.names.index(name)

    def __repr__(self) -> str:
        tag = self.label or f"{self.n} elements"
        return f"QuantumEventAlgebra({tag})"


def quantum_event_algebra(
    names: Sequence[str],
    leq: Iterable[tuple[int, int]],
    ortho: Sequence[int],
    top: int,
    label: str = "",
) -> QuantumEventAlgebra:
    """Build an algebra from a cover or full order relation (closed here)."""
    names = tuple(names)
    n = len(names)
    if len(set(names)) != n:
        raise MalformedInput("element names must be unique")
    if len(ortho) != n or any(not 0 <= o < n for o in ortho):
        raise MalformedInput("ortho must map every element to an element")
    if not 0 <= top < n:
        raise MalformedInput("top must be an element index")
    rows = [0] * n
    for x, y in leq:
        if not (0 <= x < n and 0 <= y < n):
            raise MalformedInput(f"leq pair ({x}, {y}) out of range")
        rows[x] |= 1 << y
    return QuantumEventAlgebra(names, _transitive_closure(n, rows), tuple(ortho), top, label)


@dataclass(frozen=True)
class ConditionResult:
    condition: str
    passed: bool
    witness: tuple[str, ...] = ()


@dataclass(frozen=True)
class AxiomReport:
    label: str
    conditions: tuple[ConditionResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.conditions)

    @property
    def failed(self) -> tuple[str, ...]:
        return tuple(c.condition for c in self.conditions if not c.passed)

    def witness_for(self, condition: str) -> tuple[str, ...]:
        for c in self.conditions:
            if c.condition == condition:
                return c.witness
        raise KeyError(condition)


@dataclass(frozen=True)
class GeneratedSubalgebra:
    carrier: frozenset[int]
    is_boolean: bool


def _induced_join(L: QuantumEventAlgebra, carrier_mask: int, x: int, y: int) -> Optional[int]:
    common = L.up[x] & L.up[y] & carrier_mask
    for i in _bits(common):
        if common & ~L.up[i] == 0:
            return i
    return None


def _induced_meet(L: QuantumEventAlgebra, carrier_mask: int, x: int, y: int) -> Optional[int]:
    common = L.down[x] & L.down[y] & carrier_mask
    for i in _bits(common):
        if common & ~L.down[i] == 0:
            return i
    return None


def _carrier_is_boolean(L: QuantumEventAlgebra, carrier: frozenset[int]) -> bool:
    """Distributive complemented lattice check on the induced suborder."""
    mask = 0
    for x in carrier:
        mask |= 1 << x
    elems = sorted(carrier)
    joins: dict[tuple[int, int], int] = {}
    meets: dict[tuple[int, int], int] = {}
    for x, y in itertools.combinations_with_replacement(elems, 2):
        j = _induced_join(L, mask, x, y)
        m = _induced_meet(L, mask, x, y)
        if j is None or m is None:
            return False
        joins[(x, y)] = joins[(y, x)] = j
        meets[(x, y)] = meets[(y, x)] = m
    for x in elems:
        o = L.ortho_map[x]
        if o not in carrier:
            return False
        if meets[(x, o)] != L.bottom or joins[(x, o)] != L.top:
            return False
    for x, y, z in itertools.product(elems, repeat=3):
        if meets[(x, joins[(y, z)])] != joins[(meets[(x, y)], meets[(x, z)])]:
            return False
    return True


def generated_boolean(L: QuantumEventAlgebra, seeds: Iterable[int]) -> GeneratedSubalgebra:
    """Smallest ortho-closed carrier containing the seeds, closed under the
    joins and meets that exist in L; Boolean flag per the induced order.

    Raises ClosureFailure when an orthogonal pair inside the closure has no
    join in L (such joins must exist in a valid algebra).
    """
    carrier = set(seeds)
    carrier.update((L.top, L.bottom))
    while True:
        new: set[int] = set()
        for x in carrier:
            o = L.ortho_map[x]
            if o not in carrier:
                new.add(o)
        for x, y in itertools.combinations(carrier, 2):
            j = L.join(x, y)
            m = L.meet(x, y)
            if j is None and L.orthogonal(x, y):
                raise ClosureFailure(
                    f"join of orthogonal pair ({L.name_of(x)}, {L.name_of(y)}) does not exist"
                )
            if j is not None and j not in carrier:
                new.add(j)
            if m is not None and m not in carrier:
                new.add(m)
        if not new:
            break
        carrier.update(new)
    frozen = frozenset(carrier)
    return GeneratedSubalgebra(frozen, _carrier_is_boolean(L, frozen))


def check_axioms(L: QuantumEventAlgebra) -> AxiomReport:
    """Validate the six orthoposet conditions, with counterexamples.

    Raises MalformedInput (before any condition check) when ortho is not a
    bijection or the stored relation is not antisymmetric.
    """
    if L.n == 0:
        raise MalformedInput("the algebra has no elements")
    if sorted(L.ortho_map) != list(range(L.n)):
        raise MalformedInput("ortho is not a bijection on the element set")
    for x in L.elements():
        for y in _bits(L.up[x]):
            if y != x and L.leq(y, x):
                raise MalformedInput(
                    f"leq is not a partial order: {L.name_of(x)} and {L.name_of(y)} "
                    "are equivalent but distinct"
                )

    results = []

    witness_a = next((x for x in L.elements() if not L.leq(x, L.top)), None)
    results.append(
        ConditionResult("a", witness_a is None, () if witness_a is None else (L.name_of(witness_a),))
    )

    witness_b = next((x for x in L.elements() if L.ortho_map[L.ortho_map[x]] != x), None)
    results.append(
        ConditionResult("b", witness_b is None, () if witness_b is None else (L.name_of(witness_b),))
    )

    witness_c = next((x for x in L.elements() if L.join(x, L.ortho_map[x]) != L.top), None)
    results.append(
        ConditionResult("c", witness_c is None, () if witness_c is None else (L.name_of(witness_c),))
    )

    witness_d = None
    for x in L.elements():
        for y in _bits(L.up[x]):
            if not L.leq(L.ortho_map[y], L.ortho_map[x]):
                witness_d = (L.name_of(x), L.name_of(y))
                break
        if witness_d:
            break
    results.append(ConditionResult("d", witness_d is None, witness_d or ()))

    witness_e = None
    for x, y in itertools.combinations(L.elements(), 2):
        if L.orthogonal(x, y) and L.join(x, y) is None:
            witness_e = (L.name_of(x), L.name_of(y))
            break
    results.append(ConditionResult("e", witness_e is None, witness_e or ()))

    witness_f = None
    for x in L.elements():
        for y in _bits(L.up[x]):
            if y == x:
                continue
            try:
                if not generated_boolean(L, (x, y)).is_boolean:
                    witness_f = (L.name_of(x), L.name_of(y))
            except ClosureFailure:
                witness_f = (L.name_of(x), L.name_of(y))
            if witness_f:
                break
        if witness_f:
            break
    results.append(ConditionResult("f", witness_f is None, witness_f or ()))

    return AxiomReport(L.label, tuple(results))


def meet_join(L: QuantumEventAlgebra, x: int, y: int) -> tuple[Optional[int], Optional[int]]:
    """(meet, join) of a pair; absence is a valid result in an orthoposet."""
    return L.meet(x, y), L.join(x, y)


@dataclass(frozen=True)
class QuantumHom:
    """A map of quantum event algebras preserving 1, ortho, order, and joins
    of orthogonal pairs.  Monic means injective.
    """

    source: QuantumEventAlgebra
    target: QuantumEventAlgebra
    mapping: tuple[int, ...]

    def apply(self, x: int) -> int:
        return self.mapping[x]

    @property
    def is_injective(self) -> bool:
        return len(set(self.mapping)) == len(self.mapping)

    @property
    def image(self) -> frozenset[int]:
        return frozenset(self.mapping)

    def compose(self, other: "QuantumHom") -> "QuantumHom":
        """self after other (other first)."""
        if other.target != self.source:
            raise MalformedInput("quantum homs are not composable")
        return QuantumHom(other.source, self.target, tuple(self.mapping[y] for y in other.mapping))


def identity_quantum_hom(L: QuantumEventAlgebra) -> QuantumHom:
    return QuantumHom(L, L, tuple(L.elements()))


def verify_quantum_hom(h: QuantumHom) -> bool:
    """Exhaustive preservation check of the defining operations."""
    src, tgt = h.source, h.target
    if h.apply(src.top) != tgt.top:
        return False
    for x in src.elements():
        if h.apply(src.ortho_map[x]) != tgt.ortho_map[h.apply(x)]:
            return False
        for y in _bits(src.up[x]):
            if not tgt.leq(h.apply(x), h.apply(y)):
                return False
    for x, y in itertools.combinations(src.elements(), 2):
        if src.orthogonal(x, y):
            j = src.join(x, y)
            if j is None:
                continue
            jt = tgt.join(h.apply(x), h.apply(y))
            if jt is None or jt != h.apply(j):
                return False
    return True


def _maximal_cliques(adj: list[int], n: int):
    """Bron-Kerbosch with pivoting over a bitmask adjacency, deterministic order."""
    cliques: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if p == 0 and x == 0:
            cliques.append(r)
            return
        pivot_candidates = p | x
        pivot = max(_bits(pivot_candidates), key=lambda v: bin(adj[v] & p).count("1"))
        for v in _bits(p & ~adj[pivot]):
            bit = 1 << v
            expand(r | bit, p & adj[v], x & adj[v])
            p &= ~bit
            x |= bit

    expand(0, (1 << n) - 1, 0)
    return cliques


def enumerate_blocks(L: QuantumEventAlgebra) -> tuple[tuple[int, ...], ...]:
    """Maximal Boolean subalgebras, in canonical (lexicographic) order.

    Computed as maximal cliques of the pairwise compatibility relation, each
    verified to be a Boolean subalgebra closed under the generated-subalgebra
    operator.
    """
    n = L.n
    adj = [0] * n
    for x, y in itertools.combinations(range(n), 2):
        try:
            compatible = generated_boolean(L, (x, y)).is_boolean
        except ClosureFailure:
            compatible = False
        if compatible:
            adj[x] |= 1 << y
            adj[y] |= 1 << x
    blocks = []
    for clique_mask in _maximal_cliques(adj, n):
        carrier = frozenset(_bits(clique_mask))
        try:
            gen = generated_boolean(L, carrier)
        except ClosureFailure:
            continue
        if gen.carrier == carrier and gen.is_boolean:
            blocks.append(tuple(sorted(carrier)))
    blocks = [b for b in blocks if not any(set(b) < set(c) for c in blocks)]
    return tuple(sorted(set(blocks)))


def orthomodular_law_holds(L: QuantumEventAlgebra) -> bool:
    """Lattice orthomodular law x <= y implies y = x v (x* ^ y), where defined.

    Used in tests to cross-check condition [f] on lattice-ordered inputs.
    """
    for x in L.elements():
        for y in _bits(L.up[x]):
            m = L.meet(L.ortho_map[x], y)
            if m is None:
                return False
            j = L.join(x, m)
            if j != y:
                return False
    return True


def paste_blocks(blocks: Sequence[Sequence[str]], label: str = "") -> QuantumEventAlgebra:
    """Greechie pasting: each block is the Boolean algebra on its atoms, and
    blocks are glued along the subalgebras generated by shared atoms.

    0 and 1 are implicit.  The orthocomplement of a block element is its
    complement within that block; complements of identified elements are
    identified, which is what makes the pasting well defined.
    """
    if not blocks:
        raise MalformedInput("at least one block is required")
    atom_order: list[str] = []
    block_sets: list[frozenset[str]] = []
    for blk in blocks:
        atoms = list(blk)
        if not atoms or len(set(atoms)) != len(atoms):
            raise MalformedInput(f"block {blk!r} must list distinct atoms")
        for a in atoms:
            if a not in atom_order:
                atom_order.append(a)
        block_sets.append(frozenset(atoms))

    nodes: list[tuple[int, frozenset[str]]] = []
    for bi, atoms in enumerate(block_sets):
        for r in range(1, len(atoms)):
            for combo in itertools.combinations(sorted(atoms), r):
                nodes.append((bi, frozenset(combo)))

    parent = {node: node for node in nodes}

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    def union(u, v):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv, key=_node_key)] = min(ru, rv, key=_node_key)

    def _node_key(node):
        bi, s = node
        return (tuple(sorted(s)), bi)

    by_subset: dict[frozenset[str], list[tuple[int, frozenset[str]]]] = {}
    for node in nodes:
        by_subset.setdefault(node[1], []).append(node)
    for group in by_subset.values():
        for other in group[1:]:
            union(group[0], other)

    # Complements of identified elements are identified; iterate to fixpoint.
    changed = True
    while changed:
        changed = False
        classes: dict[tuple[int, frozenset[str]], list[tuple[int, frozenset[str]]]] = {}
        for node in nodes:
            classes.setdefault(find(node), []).append(node)
        for members in classes.values():
            complements = [(bi, block_sets[bi] - s) for bi, s in members]
            root = find(complements[0])
            for comp in complements[1:]:
                if find(comp) != root:
                    union(complements[0], comp)
                    changed = True

    class_of = {node: find(node) for node in nodes}
    reps = sorted(set(class_of.values()), key=_node_key)

    def class_name(rep) -> str:
        members = sorted((s for node, r in class_of.items() if r == rep for s in [node[1]]),
                         key=lambda s: tuple(sorted(s)))
        best = members[0]
        return "+".join(sorted(best))

    names = ["0", "1"] + [class_name(rep) for rep in reps]
    if len(set(names)) != len(names):
        raise MalformedInput("atom names collide with reserved names or each other")
    index = {rep: i + 2 for i, rep in enumerate(reps)}

    leq_pairs = []
    for i in range(len(names)):
        leq_pairs.append((0, i))
        leq_pairs.append((i, 1))
    for node in nodes:
        bi, s = node
        for other in nodes:
            bj, t = other
            if bi == bj and s < t:
                leq_pairs.append((index[class_of[node]], index[class_of[other]]))

    ortho = [1, 0] + [0] * len(reps)
    for rep in reps:
        bi, s = rep
        comp = (bi, block_sets[bi] - s)
        ortho[index[rep]] = index[class_of[comp]]

    return quantum_event_algebra(names, leq_pairs, ortho, top=1, label=label)
