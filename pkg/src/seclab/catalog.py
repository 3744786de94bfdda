"""A deterministic catalog of small groups, extensions, and seeded instances.

Presets cover the cyclic, dihedral, dicyclic, symmetric/alternating, and a
few metacyclic and product groups up to order 64.  Everything derived from
them — extension lists, coefficient systems, seeded local-section instances
— is reproducible: identical arguments and seeds give identical objects.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .cohomology import GammaGroup, constant_coefficients
from .errors import BoundExceeded, UnknownName, ValidationError
from .extensions import Extension, enumerate_sections, make_extension
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    all_normal_subgroups,
    all_subgroups,
    automorphism_group,
    compose,
    conjugacy_classes,
    cyclic_group,
    direct_product,
    enumerate_homs,
    group_from_permutations,
    group_from_table,
    identity_hom,
    quotient,
    subgroup_as_group,
    subgroup_generated,
)
from .localglobal import LocalFamily, LocalSections, check_density

__all__ = [
    "MAX_PRESET_ORDER",
    "dihedral_group",
    "dicyclic_group",
    "metacyclic_group",
    "symmetric_group",
    "alternating_group",
    "preset_groups",
    "preset_names",
    "preset_group",
    "preset_extensions",
    "coefficient_catalog",
    "seeded_instances",
    "seeded_transport_pairs",
]

#: Hard cap on preset orders; beyond this the exhaustive searches stop paying.
MAX_PRESET_ORDER = 64


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon as permutations of its vertices."""
    if n < 3:
        raise ValidationError(f"dihedral group needs n >= 3, got {n}")
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((n - i) % n for i in range(n))
    return group_from_permutations(n, [rot, ref], label=f"D{n}")[0]


def dicyclic_group(n: int) -> FiniteGroup:
    """The dicyclic group of order 4n; n = 2 gives the quaternions."""
    if n < 2:
        raise ValidationError(f"dicyclic group needs n >= 2, got {n}")
    m = 2 * n
    size = 4 * n

    def mul(i: int, j: int) -> int:
        k, l = i % m, i // m
        kp, lp = j % m, j // m
        if l == 0:
            return (k + kp) % m + m * lp
        if lp == 0:
            return (k - kp) % m + m
        return (k - kp + n) % m

    label = "Q8" if n == 2 else ("Q16" if n == 4 else f"Dic{n}")
    table = [[mul(i, j) for j in range(size)] for i in range(size)]
    return group_from_table(table, label=label)


def metacyclic_group(m: int, n: int, r: int) -> FiniteGroup:
    """The split extension of Z/m by Z/n where the generator acts as r.

    Requires r^n = 1 mod m so the action is well defined.
    """
    if pow(r, n, m) != 1 % m:
        raise ValidationError(f"r^n must be 1 mod m; got {r}^{n} mod {m}")

    def mul(i: int, j: int) -> int:
        k, l = i % m, i // m
        kp, lp = j % m, j // m
        return (k + pow(r, l, m) * kp) % m + m * ((l + lp) % n)

    table = [[mul(i, j) for j in range(m * n)] for i in range(m * n)]
    return group_from_table(table, label=f"C{m}:C{n}r{r}")


def symmetric_group(n: int) -> FiniteGroup:
    if n < 2:
        raise ValidationError(f"symmetric group needs n >= 2, got {n}")
    swap = (1, 0) + tuple(range(2, n))
    cycle = tuple((i + 1) % n for i in range(n))
    return group_from_permutations(n, [swap, cycle], label=f"S{n}")[0]


def alternating_group(n: int) -> FiniteGroup:
    if n < 3:
        raise ValidationError(f"alternating group needs n >= 3, got {n}")
    three = (1, 2, 0) + tuple(range(3, n))
    if n % 2 == 1:
        cycle = tuple((i + 1) % n for i in range(n))
    else:
        cycle = (0,) + tuple(1 + (i % (n - 1)) for i in range(1, n))
    return group_from_permutations(n, [three, cycle], label=f"A{n}")[0]


def _product(label: str) -> FiniteGroup:
    parts = [cyclic_group(int(p[1:])) for p in label.split("x")]
    out = parts[0]
    for nxt in parts[1:]:
        out = direct_product(out, nxt)
    return FiniteGroup(out.table, out.identity, out.inverse, label)


_PRODUCT_LABELS = (
    "C2xC2",
    "C2xC4",
    "C2xC2xC2",
    "C3xC3",
    "C2xC6",
    "C2xC8",
    "C4xC4",
    "C3xC6",
    "C2xC12",
)


@lru_cache(maxsize=None)
def preset_groups(max_order: int = 24) -> Tuple[FiniteGroup, ...]:
    """All catalog groups of order at most ``max_order``, sorted by
    (order, name)."""
    if max_order > MAX_PRESET_ORDER:
        raise BoundExceeded(
            f"preset catalog stops at order {MAX_PRESET_ORDER}, asked for {max_order}"
        )
    out: List[FiniteGroup] = []
    for n in range(2, max_order + 1):
        out.append(cyclic_group(n))
    for label in _PRODUCT_LABELS:
        g = _product(label)
        if g.order <= max_order:
            out.append(g)
    for n in range(3, max_order // 2 + 1):
        out.append(dihedral_group(n))
    for n in (2, 3, 4, 6):
        if 4 * n <= max_order:
            out.append(dicyclic_group(n))
    for g in (symmetric_group(3), symmetric_group(4), alternating_group(4)):
        if g.order <= max_order:
            out.append(g)
    if 20 <= max_order:
        out.append(metacyclic_group(5, 4, 2))
    if 21 <= max_order:
        out.append(metacyclic_group(7, 3, 2))
    return tuple(sorted(out, key=lambda g: (g.order, g.label or "")))


def preset_names(max_order: int = 24) -> Tuple[str, ...]:
    return tuple(g.label or "?" for g in preset_groups(max_order))


def preset_group(name: str, max_order: int = MAX_PRESET_ORDER) -> FiniteGroup:
    """Look a preset up by name, e.g. ``"D4"`` or ``"C2xC2"``."""
    for g in preset_groups(max_order):
        if g.label == name:
            return g
    raise UnknownName(f"no preset group named {name!r}")


@lru_cache(maxsize=None)
def preset_extensions(max_order: int = 24) -> Tuple[Tuple[str, Extension], ...]:
    """Every preset middle group with every normal subgroup as the kernel.

    Names follow ``E/ni`` where i indexes the normal subgroup list; the
    trivial and full kernels are kept for their edge behaviour.
    """
    out: List[Tuple[str, Extension]] = []
    for g in preset_groups(max_order):
        for i, n_sub in enumerate(all_normal_subgroups(g)):
            a_grp, iota = subgroup_as_group(n_sub)
            _, pi = quotient(g, n_sub)
            out.append((f"{g.label}/n{i}", make_extension(iota, pi)))
    return tuple(out)


@lru_cache(maxsize=None)
def coefficient_catalog(
    gamma: FiniteGroup, max_m: int = 8
) -> Tuple[GammaGroup, ...]:
    """Every action of the base on every preset of order at most ``max_m``.

    Each entry is one homomorphism into the automorphism group of some
    preset; the constant system is the trivial-hom entry.
    """
    out: List[GammaGroup] = []
    for m in preset_groups(max_m):
        aut, auts = automorphism_group(m)
        for phi in enumerate_homs(gamma, aut):
            rows = tuple(auts[phi.map[g]].map for g in gamma.elements)
            out.append(GammaGroup(gamma, m, rows))
    return tuple(out)


# ---------------------------------------------------------------------------
# seeded instances


@lru_cache(maxsize=None)
def _lifts(theta: GroupHom, ext: Extension) -> Tuple[GroupHom, ...]:
    return tuple(
        t
        for t in enumerate_homs(theta.source, ext.E)
        if compose(ext.pi, t).map == theta.map
    )


def _instance_pool(max_middle: int) -> Tuple[Extension, ...]:
    return tuple(
        ext
        for _, ext in preset_extensions(max_middle)
        if ext.Gamma.order > 1 and ext.A.order > 1
    )


def seeded_instances(
    seed: int, count: int, max_middle: int = 16
) -> Tuple[LocalSections, ...]:
    """Reproducible local-section instances over the preset extensions.

    Each instance draws an extension, up to three locals (subgroup
    inclusions, sometimes the full base), and one lift per local — either
    conjugates of a global section or independent random lifts.  Locals
    with no lift are dropped.
    """
    rng = random.Random(seed)
    pool = _instance_pool(max_middle)
    out: List[LocalSections] = []
    while len(out) < count:
        ext = rng.choice(pool)
        gamma = ext.Gamma
        report = enumerate_sections(ext)
        coherent = bool(report.sections) and rng.random() < 0.5
        thetas: List[GroupHom] = []
        sections: List[GroupHom] = []
        for _ in range(rng.randint(0, 3)):
            if rng.random() < 0.25:
                theta = identity_hom(gamma)
            else:
                sub = rng.choice(all_subgroups(gamma))
                g_i, inc = subgroup_as_group(sub)
                theta = GroupHom(g_i, gamma, inc.map)
            if coherent:
                s0 = report.sections[0]
                a_i = rng.choice(ext.iota.map)
                lift = GroupHom(
                    theta.source,
                    ext.E,
                    tuple(
                        ext.E.conj(a_i, s0.map[theta.map[x]])
                        for x in theta.source.elements
                    ),
                )
            else:
                lifts = _lifts(theta, ext)
                if not lifts:
                    continue
                lift = rng.choice(lifts)
            thetas.append(theta)
            sections.append(lift)
        out.append(
            LocalSections(ext, LocalFamily(gamma, tuple(thetas)), tuple(sections))
        )
    return tuple(out)


def seeded_transport_pairs(
    seed: int, count: int, max_order: int = 12
) -> Tuple[Tuple[LocalFamily, Subgroup], ...]:
    """Reproducible (dense family, subgroup) pairs for transport checks.

    Density comes for free: one cyclic local per conjugacy class
    representative already covers the group.
    """
    rng = random.Random(seed)
    pool = [g for g in preset_groups(max_order) if g.order > 1]
    out: List[Tuple[LocalFamily, Subgroup]] = []
    for _ in range(count):
        gamma = rng.choice(pool)
        thetas = []
        for cls in conjugacy_classes(gamma):
            sub = subgroup_generated(gamma, [cls[0]])
            g_i, inc = subgroup_as_group(sub)
            thetas.append(GroupHom(g_i, gamma, inc.map))
        fam = LocalFamily(gamma, tuple(thetas))
        if not check_density(fam):
            raise AssertionError(f"class-representative family failed to cover {gamma.label}")
        out.append((fam, rng.choice(all_subgroups(gamma))))
    return tuple(out)
