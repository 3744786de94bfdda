"""Finite groups as dense multiplication tables over element indices.

Elements of a group of order n are the integers 0..n-1; the whole structure
is the n-by-n table.  Permutation input is converted to a table at the
boundary.  Constructors validate exhaustively and raise the errors from
:mod:`seclab.errors` with explicit witnesses; speed is second to that.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Tuple

from .errors import (
    ClosureBoundExceeded,
    NoIdentity,
    NoInverse,
    NotAHomomorphism,
    NotAPermutation,
    NotAssociative,
    NotASubgroup,
    NotNormal,
    ValidationError,
)

__all__ = [
    "FiniteGroup",
    "Subgroup",
    "GroupHom",
    "JordanCover",
    "group_from_table",
    "group_from_permutations",
    "trivial_group",
    "cyclic_group",
    "direct_product",
    "generating_set",
    "element_order",
    "enumerate_homs",
    "hom_from_generator_images",
    "identity_hom",
    "trivial_hom",
    "compose",
    "kernel",
    "image",
    "is_injective",
    "is_surjective",
    "is_bijective",
    "inverse_hom",
    "subgroup",
    "subgroup_generated",
    "trivial_subgroup",
    "full_subgroup",
    "subgroup_as_group",
    "is_normal",
    "conjugacy_classes",
    "class_index",
    "are_conjugate",
    "union_of_conjugates",
    "is_class_preserving",
    "quotient",
    "all_subgroups",
    "all_normal_subgroups",
    "all_normal_subgroups_between",
    "automorphisms",
    "automorphism_group",
    "inner_automorphism",
    "partition_by_conjugation",
]

#: Default cap on permutation-closure size; generous for the supported corpus.
DEFAULT_CLOSURE_BOUND = 10080


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group: its full multiplication table plus derived data.

    ``table[a][b]`` is the index of the product ``a*b``.  ``label`` is
    cosmetic and ignored by equality so that structurally equal groups
    compare (and hash) equal.
    """

    table: Tuple[Tuple[int, ...], ...]
    identity: int
    inverse: Tuple[int, ...]
    label: Optional[str] = field(default=None, compare=False)

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(len(self.table))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, g: int, x: int) -> int:
        """g * x * g^-1."""
        t = self.table
        return t[t[g][x]][self.inverse[g]]

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in self.elements for b in self.elements)

    def __repr__(self) -> str:
        name = self.label or "group"
        return f"<{name}: order {self.order}>"


def group_from_table(
    table: Sequence[Sequence[int]], label: Optional[str] = None
) -> FiniteGroup:
    """Validate a multiplication table and wrap it as a :class:`FiniteGroup`.

    Checks, in order: entry range, a two-sided identity, associativity on
    every triple, and a two-sided inverse for every element.
    """
    n = len(table)
    if n == 0:
        raise NoIdentity("empty table has no identity element")
    rows = tuple(tuple(row) for row in table)
    for a, row in enumerate(rows):
        if len(row) != n:
            raise ValidationError(f"row {a} has length {len(row)}, expected {n}")
        for b, v in enumerate(row):
            if not (0 <= v < n):
                raise ValidationError(f"entry table[{a}][{b}] = {v} outside 0..{n - 1}")
    identity = None
    for e in range(n):
        if all(rows[e][g] == g and rows[g][e] == g for g in range(n)):
            identity = e
            break
    if identity is None:
        raise NoIdentity(f"no two-sided identity among {n} elements")
    for a in range(n):
        for b in range(n):
            ab = rows[a][b]
            for c in range(n):
                if rows[ab][c] != rows[a][rows[b][c]]:
                    raise NotAssociative(
                        f"({a}*{b})*{c} = {rows[ab][c]} but {a}*({b}*{c}) = {rows[a][rows[b][c]]}"
                    )
    inverse = []
    for g in range(n):
        inv = None
        for h in range(n):
            if rows[g][h] == identity and rows[h][g] == identity:
                inv = h
                break
        if inv is None:
            raise NoInverse(f"element {g} has no two-sided inverse")
        inverse.append(inv)
    return FiniteGroup(rows, identity, tuple(inverse), label)


def _compose_perms(p: Tuple[int, ...], q: Tuple[int, ...]) -> Tuple[int, ...]:
    """Left-to-right as maps: (p*q)(x) = p(q(x))."""
    return tuple(p[q[x]] for x in range(len(p)))


def _check_permutation(perm: Sequence[int], degree: int) -> Tuple[int, ...]:
    p = tuple(perm)
    if len(p) != degree or sorted(p) != list(range(degree)):
        raise NotAPermutation(f"{p!r} is not a permutation of 0..{degree - 1}")
    return p


def group_from_permutations(
    degree: int,
    generators: Iterable[Sequence[int]],
    label: Optional[str] = None,
    closure_bound: int = DEFAULT_CLOSURE_BOUND,
) -> Tuple[FiniteGroup, Tuple[Tuple[int, ...], ...]]:
    """Close permutation generators under composition and tabulate the result.

    Returns the group together with the element-to-permutation dictionary
    (a tuple indexed by element).  Elements are sorted lexicographically as
    permutation tuples, which places the identity at index 0.
    """
    idp = tuple(range(degree))
    gens = [_check_permutation(p, degree) for p in generators]
    seen = {idp}
    frontier = [idp]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = _compose_perms(p, g)
                if q not in seen:
                    seen.add(q)
                    if len(seen) > closure_bound:
                        raise ClosureBoundExceeded(
                            f"closure of {len(gens)} generators exceeded {closure_bound} elements"
                        )
                    nxt.append(q)
        frontier = nxt
    perms = tuple(sorted(seen))
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[_compose_perms(perms[a], perms[b])] for b in range(len(perms))]
        for a in range(len(perms))
    ]
    return group_from_table(table, label), perms


def trivial_group(label: str = "1") -> FiniteGroup:
    return group_from_table(((0,),), label)


def cyclic_group(n: int, label: Optional[str] = None) -> FiniteGroup:
    if n < 1:
        raise ValidationError(f"cyclic group order must be positive, got {n}")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return group_from_table(table, label or f"C{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup, label: Optional[str] = None) -> FiniteGroup:
    """Componentwise product on pairs encoded as a*|h| + b."""
    m = h.order
    size = g.order * m
    table = [
        [g.mul(x // m, y // m) * m + h.mul(x % m, y % m) for y in range(size)]
        for x in range(size)
    ]
    if label is None and g.label and h.label:
        label = f"{g.label}x{h.label}"
    return group_from_table(table, label)


# ---------------------------------------------------------------------------
# generation, element orders, homomorphisms


def element_order(group: FiniteGroup, g: int) -> int:
    k, x = 1, g
    while x != group.identity:
        x = group.mul(x, g)
        k += 1
    return k


def _power(group: FiniteGroup, g: int, k: int) -> int:
    x = group.identity
    for _ in range(k):
        x = group.mul(x, g)
    return x


def _close_elements(group: FiniteGroup, seed: Iterable[int]) -> frozenset:
    """Closure of a seed set (plus identity) under multiplication."""
    elems = set(seed)
    elems.add(group.identity)
    frontier = list(elems)
    while frontier:
        nxt = []
        for x in frontier:
            for y in list(elems):
                for z in (group.mul(x, y), group.mul(y, x)):
                    if z not in elems:
                        elems.add(z)
                        nxt.append(z)
        frontier = nxt
    return frozenset(elems)


@lru_cache(maxsize=None)
def generating_set(group: FiniteGroup) -> Tuple[int, ...]:
    """A small generating set, chosen greedily for maximal span growth.

    Ties go to the smallest element index, so the result is deterministic.
    """
    span = frozenset([group.identity])
    gens: list[int] = []
    while len(span) < group.order:
        best_g, best_span = None, None
        for g in group.elements:
            if g in span:
                continue
            cand = _close_elements(group, span | {g})
            if best_span is None or len(cand) > len(best_span):
                best_g, best_span = g, cand
        gens.append(best_g)
        span = best_span
    return tuple(gens)


@lru_cache(maxsize=None)
def _derivation(group: FiniteGroup) -> Tuple[Tuple[int, ...], Tuple[Optional[Tuple[int, int]], ...]]:
    """BFS order and parent links writing each element as parent * generator."""
    gens = generating_set(group)
    parent: list[Optional[Tuple[int, int]]] = [None] * group.order
    order = [group.identity]
    seen = {group.identity}
    qi = 0
    while qi < len(order):
        x = order[qi]
        qi += 1
        for gi, g in enumerate(gens):
            y = group.mul(x, g)
            if y not in seen:
                seen.add(y)
                parent[y] = (x, gi)
                order.append(y)
    return tuple(order), tuple(parent)


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism stored as the full image tuple ``map[x]``.

    Validated on construction: identity goes to identity and every product
    is preserved.
    """

    source: FiniteGroup
    target: FiniteGroup
    map: Tuple[int, ...]

    def __post_init__(self) -> None:
        m = self.map
        if len(m) != self.source.order:
            raise NotAHomomorphism(
                f"map has {len(m)} entries for a source of order {self.source.order}"
            )
        for v in m:
            if not (0 <= v < self.target.order):
                raise NotAHomomorphism(f"image {v} outside target of order {self.target.order}")
        if m[self.source.identity] != self.target.identity:
            raise NotAHomomorphism(
                f"identity {self.source.identity} maps to {m[self.source.identity]}, not the identity"
            )
        for a in self.source.elements:
            for b in self.source.elements:
                if m[self.source.mul(a, b)] != self.target.mul(m[a], m[b]):
                    raise NotAHomomorphism(
                        f"f({a}*{b}) = {m[self.source.mul(a, b)]} but f({a})*f({b}) = "
                        f"{self.target.mul(m[a], m[b])}"
                    )

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __repr__(self) -> str:
        return f"<hom {self.source.label or '?'} -> {self.target.label or '?'}: {self.map}>"


def identity_hom(group: FiniteGroup) -> GroupHom:
    return GroupHom(group, group, tuple(group.elements))


def trivial_hom(source: FiniteGroup, target: FiniteGroup) -> GroupHom:
    return GroupHom(source, target, (target.identity,) * source.order)


def compose(outer: GroupHom, inner: GroupHom) -> GroupHom:
    """outer after inner."""
    if inner.target != outer.source:
        raise ValidationError("composition mismatch: inner target differs from outer source")
    return GroupHom(inner.source, outer.target, tuple(outer.map[v] for v in inner.map))


def _map_from_generator_images(
    src: FiniteGroup, tgt: FiniteGroup, images: Sequence[int]
) -> Optional[Tuple[int, ...]]:
    """Propagate generator images along the derivation; None if not a hom."""
    order, parent = _derivation(src)
    m = [-1] * src.order
    m[src.identity] = tgt.identity
    for x in order[1:]:
        prev, gi = parent[x]
        m[x] = tgt.mul(m[prev], images[gi])
    for a in src.elements:
        ma = m[a]
        row_a = src.table[a]
        trow = tgt.table[ma]
        for b in src.elements:
            if m[row_a[b]] != trow[m[b]]:
                return None
    return tuple(m)


def hom_from_generator_images(
    src: FiniteGroup, tgt: FiniteGroup, images: Sequence[int]
) -> GroupHom:
    """The hom sending the canonical generating set to ``images``."""
    gens = generating_set(src)
    if len(images) != len(gens):
        raise NotAHomomorphism(
            f"expected {len(gens)} generator images for generators {gens}, got {len(images)}"
        )
    m = _map_from_generator_images(src, tgt, list(images))
    if m is None:
        raise NotAHomomorphism(
            f"generator images {tuple(images)} do not extend to a homomorphism"
        )
    return GroupHom(src, tgt, m)


@lru_cache(maxsize=None)
def enumerate_homs(src: FiniteGroup, tgt: FiniteGroup) -> Tuple[GroupHom, ...]:
    """Every homomorphism src -> tgt, sorted lexicographically by image tuple.

    Candidates are generator-image assignments; each surviving assignment is
    verified on all pairs.
    """
    gens = generating_set(src)
    gen_orders = [element_order(src, g) for g in gens]
    found = []
    for images in itertools.product(range(tgt.order), repeat=len(gens)):
        # image order must divide generator order
        if any(_power(tgt, images[i], gen_orders[i]) != tgt.identity for i in range(len(gens))):
            continue
        m = _map_from_generator_images(src, tgt, images)
        if m is not None:
            found.append(m)
    found.sort()
    return tuple(GroupHom(src, tgt, m) for m in found)


def kernel(hom: GroupHom) -> "Subgroup":
    elems = tuple(g for g in hom.source.elements if hom.map[g] == hom.target.identity)
    return Subgroup(hom.source, elems)


def image(hom: GroupHom) -> "Subgroup":
    return Subgroup(hom.target, tuple(sorted(set(hom.map))))


def is_injective(hom: GroupHom) -> bool:
    return len(set(hom.map)) == hom.source.order


def is_surjective(hom: GroupHom) -> bool:
    return len(set(hom.map)) == hom.target.order


def is_bijective(hom: GroupHom) -> bool:
    return hom.source.order == hom.target.order and is_injective(hom)


def inverse_hom(hom: GroupHom) -> GroupHom:
    if not is_bijective(hom):
        raise ValidationError("only bijective homomorphisms can be inverted")
    back = [0] * hom.target.order
    for x, y in enumerate(hom.map):
        back[y] = x
    return GroupHom(hom.target, hom.source, tuple(back))


# ---------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True)
class Subgroup:
    """A validated subgroup: a sorted element tuple inside a parent group."""

    parent: FiniteGroup
    elements: Tuple[int, ...]

    def __post_init__(self) -> None:
        elems = self.elements
        if tuple(sorted(set(elems))) != elems:
            raise NotASubgroup(f"element list {elems} is not sorted and duplicate-free")
        eset = set(elems)
        for g in elems:
            if not (0 <= g < self.parent.order):
                raise NotASubgroup(f"element {g} outside parent of order {self.parent.order}")
        if self.parent.identity not in eset:
            raise NotASubgroup(f"identity {self.parent.identity} missing from {elems}")
        for a in elems:
            if self.parent.inverse[a] not in eset:
                raise NotASubgroup(f"inverse of {a} missing from {elems}")
            for b in elems:
                if self.parent.mul(a, b) not in eset:
                    raise NotASubgroup(f"product {a}*{b} = {self.parent.mul(a, b)} escapes {elems}")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: int) -> bool:
        return g in self.elements

    def __repr__(self) -> str:
        return f"<subgroup of {self.parent.label or '?'}: {self.elements}>"


def subgroup(parent: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    return Subgroup(parent, tuple(sorted(set(elements))))


def subgroup_generated(parent: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    return Subgroup(parent, tuple(sorted(_close_elements(parent, gens))))


def trivial_subgroup(parent: FiniteGroup) -> Subgroup:
    return Subgroup(parent, (parent.identity,))


def full_subgroup(parent: FiniteGroup) -> Subgroup:
    return Subgroup(parent, tuple(parent.elements))


def subgroup_as_group(sub: Subgroup) -> Tuple[FiniteGroup, GroupHom]:
    """Re-tabulate a subgroup as a standalone group plus its inclusion hom."""
    elems = sub.elements
    index = {g: i for i, g in enumerate(elems)}
    table = [[index[sub.parent.mul(a, b)] for b in elems] for a in elems]
    label = None
    if sub.parent.label:
        label = f"{sub.parent.label}[{len(elems)}]"
    grp = group_from_table(table, label)
    return grp, GroupHom(grp, sub.parent, elems)


def _normality_witness(parent: FiniteGroup, sub: Subgroup) -> Optional[Tuple[int, int]]:
    eset = set(sub.elements)
    for g in parent.elements:
        for h in sub.elements:
            if parent.conj(g, h) not in eset:
                return g, h
    return None


def is_normal(parent: FiniteGroup, sub: Subgroup) -> bool:
    return _normality_witness(parent, sub) is None


# ---------------------------------------------------------------------------
# conjugacy


@lru_cache(maxsize=None)
def conjugacy_classes(group: FiniteGroup) -> Tuple[Tuple[int, ...], ...]:
    """Conjugacy classes as sorted tuples, ordered by least member."""
    seen = [False] * group.order
    classes = []
    for g in group.elements:
        if seen[g]:
            continue
        orbit = {group.conj(h, g) for h in group.elements}
        for x in orbit:
            seen[x] = True
        classes.append(tuple(sorted(orbit)))
    classes.sort(key=lambda c: c[0])
    return tuple(classes)


@lru_cache(maxsize=None)
def class_index(group: FiniteGroup) -> Tuple[int, ...]:
    """class_index(G)[g] is the index of g's conjugacy class."""
    idx = [0] * group.order
    for i, cls in enumerate(conjugacy_classes(group)):
        for g in cls:
            idx[g] = i
    return tuple(idx)


def are_conjugate(group: FiniteGroup, a: int, b: int) -> bool:
    ci = class_index(group)
    return ci[a] == ci[b]


@dataclass(frozen=True)
class JordanCover:
    """Union of all conjugates of a subgroup, with the covering estimate.

    ``len(union) <= group_order - index + 1`` always holds; the union is the
    whole group exactly when the subgroup already is.
    """

    union: frozenset
    group_order: int
    index: int

    @property
    def bound(self) -> int:
        return self.group_order - self.index + 1

    @property
    def covers(self) -> bool:
        return len(self.union) == self.group_order

    def triple(self) -> Tuple[int, int, int]:
        return self.group_order, self.index, len(self.union)


def union_of_conjugates(group: FiniteGroup, sub: Subgroup) -> JordanCover:
    """All conjugates of ``sub`` pooled together, with the Jordan triple."""
    if sub.parent != group:
        raise NotASubgroup("subgroup belongs to a different parent group")
    union = set()
    for g in group.elements:
        for h in sub.elements:
            union.add(group.conj(g, h))
    return JordanCover(frozenset(union), group.order, group.order // sub.order)


def is_class_preserving(hom: GroupHom) -> bool:
    """Does an endomorphism send every element into its own conjugacy class?"""
    if hom.source != hom.target:
        raise ValidationError("class preservation is only defined for endomorphisms")
    ci = class_index(hom.source)
    return all(ci[hom.map[g]] == ci[g] for g in hom.source.elements)


# ---------------------------------------------------------------------------
# quotients and subgroup lattices


def quotient(group: FiniteGroup, sub: Subgroup) -> Tuple[FiniteGroup, GroupHom]:
    """The quotient by a normal subgroup plus the projection hom.

    Cosets are indexed by their least member, in increasing order.
    """
    if sub.parent != group:
        raise NotASubgroup("subgroup belongs to a different parent group")
    witness = _normality_witness(group, sub)
    if witness is not None:
        g, h = witness
        raise NotNormal(f"conjugate {g}*{h}*{g}^-1 = {group.conj(g, h)} escapes the subgroup")
    coset_of = {}
    reps = []
    for g in group.elements:
        if g in coset_of:
            continue
        coset = sorted(group.mul(g, h) for h in sub.elements)
        for x in coset:
            coset_of[x] = len(reps)
        reps.append(coset[0])
    table = [
        [coset_of[group.mul(a, b)] for b in reps]
        for a in reps
    ]
    label = f"{group.label}/{sub.order}" if group.label else None
    quot = group_from_table(table, label)
    proj = GroupHom(group, quot, tuple(coset_of[g] for g in group.elements))
    return quot, proj


def _subgroup_lattice(group: FiniteGroup, allowed: frozenset) -> Tuple[Tuple[int, ...], ...]:
    """All subgroups whose elements stay inside ``allowed``, as element tuples."""
    found = {frozenset([group.identity])}
    frontier = [frozenset([group.identity])]
    while frontier:
        nxt = []
        for base in frontier:
            for g in sorted(allowed - base):
                grown = _close_elements(group, base | {g})
                if grown <= allowed and grown not in found:
                    found.add(grown)
                    nxt.append(grown)
        frontier = nxt
    return tuple(sorted((tuple(sorted(s)) for s in found), key=lambda t: (len(t), t)))


@lru_cache(maxsize=None)
def all_subgroups(group: FiniteGroup) -> Tuple[Subgroup, ...]:
    """Every subgroup, sorted by order then element tuple."""
    allowed = frozenset(group.elements)
    return tuple(Subgroup(group, t) for t in _subgroup_lattice(group, allowed))


@lru_cache(maxsize=None)
def all_normal_subgroups(group: FiniteGroup) -> Tuple[Subgroup, ...]:
    return tuple(s for s in all_subgroups(group) if is_normal(group, s))


def all_normal_subgroups_between(sub: Subgroup, group: FiniteGroup) -> Tuple[Subgroup, ...]:
    """Normal subgroups of ``group`` contained in ``sub`` (trivial one included)."""
    if sub.parent != group:
        raise NotASubgroup("subgroup belongs to a different parent group")
    allowed = frozenset(sub.elements)
    cands = (Subgroup(group, t) for t in _subgroup_lattice(group, allowed))
    return tuple(s for s in cands if is_normal(group, s))


@lru_cache(maxsize=None)
def automorphisms(group: FiniteGroup) -> Tuple[GroupHom, ...]:
    return tuple(h for h in enumerate_homs(group, group) if is_bijective(h))


def inner_automorphism(group: FiniteGroup, g: int) -> GroupHom:
    return GroupHom(group, group, tuple(group.conj(g, x) for x in group.elements))


@lru_cache(maxsize=None)
def automorphism_group(group: FiniteGroup) -> Tuple[FiniteGroup, Tuple[GroupHom, ...]]:
    """The automorphisms assembled into a group under composition.

    Returns the composition table together with the automorphism list it
    indexes; entry i*j is compose(auts[i], auts[j]).
    """
    auts = automorphisms(group)
    index = {a.map: i for i, a in enumerate(auts)}
    table = tuple(
        tuple(index[compose(a, b).map] for b in auts) for a in auts
    )
    label = f"Aut({group.label})" if group.label else None
    return group_from_table(table, label=label), auts


def partition_by_conjugation(
    homs: Sequence[GroupHom], conjugators: Iterable[int]
) -> Tuple[Tuple[int, ...], ...]:
    """Partition homs with a common target by pointwise conjugation.

    ``h ~ h'`` when some listed conjugator c has ``h'(x) = c h(x) c^-1`` for
    all x.  Conjugators must form a subgroup for this to be an equivalence;
    classes are returned as sorted index tuples, ordered by least member.
    """
    if not homs:
        return ()
    tgt = homs[0].target
    index = {h.map: i for i, h in enumerate(homs)}
    conjs = tuple(conjugators)
    seen = set()
    classes = []
    for i, h in enumerate(homs):
        if i in seen:
            continue
        members = set()
        for c in conjs:
            moved = tuple(tgt.conj(c, v) for v in h.map)
            j = index.get(moved)
            if j is not None:
                members.add(j)
        members.add(i)
        seen |= members
        classes.append(tuple(sorted(members)))
    return tuple(classes)
