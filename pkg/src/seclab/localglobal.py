"""Local-global interpolation for sections of a finite group extension.

A local family maps small groups into the base of an extension; local
sections lift those maps to the middle group.  The deciders answer, by
exhaustive search, whether the family of local sections survives every
coefficient test (a), every constant-coefficient test (a'), the
kernel-quotient tests (a''), and whether a global homomorphism (b) or a
global section with kernel conjugators (c) interpolates them.  All searches
are canonical: first witnesses are enumeration-least.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence, Tuple

from .cohomology import (
    Cocycle,
    GammaGroup,
    cohomologous,
    constant_coefficients,
    h1,
    pullback_class,
    pullback_coefficients,
    restrict_class,
)
from .errors import IncompatibleTower, NotASection, ValidationError
from .extensions import Extension, enumerate_sections
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    all_normal_subgroups,
    all_normal_subgroups_between,
    compose,
    enumerate_homs,
    identity_hom,
    image,
    inverse_hom,
    is_bijective,
    is_surjective,
    quotient,
    subgroup,
    subgroup_as_group,
    union_of_conjugates,
)

__all__ = [
    "LocalFamily",
    "LocalSections",
    "CorpusEntry",
    "CoefficientCorpus",
    "DescentCheck",
    "EquivalenceReport",
    "TowerResult",
    "CONSTANT_QUOTIENT",
    "A_QUOTIENT_SECTION",
    "USER_SUPPLIED",
    "check_density",
    "transport_family",
    "diagonal_fibre",
    "interpolating_homs",
    "decide_b",
    "decide_c",
    "standard_corpus",
    "decide_a",
    "decide_a_prime",
    "decide_a_doubleprime",
    "verify_equivalences",
    "interpolating_section_from_hom",
    "pushout_tower",
    "tower_limit_sections",
]

CONSTANT_QUOTIENT = "constant-quotient-of-E"
A_QUOTIENT_SECTION = "A-quotient-with-section-action"
USER_SUPPLIED = "user-supplied"


@dataclass(frozen=True)
class LocalFamily:
    """An indexed family of maps from local groups into a common base."""

    gamma: FiniteGroup
    thetas: Tuple[GroupHom, ...]

    def __post_init__(self) -> None:
        for i, theta in enumerate(self.thetas):
            if theta.target != self.gamma:
                raise ValidationError(f"local map {i} does not land in the base group")

    @property
    def locals(self) -> Tuple[Tuple[FiniteGroup, GroupHom], ...]:
        return tuple((theta.source, theta) for theta in self.thetas)

    def __len__(self) -> int:
        return len(self.thetas)


@dataclass(frozen=True)
class LocalSections:
    """Local lifts of a family through the projection of an extension.

    ``sections[i]`` maps the i-th local group into the middle group and
    projects back to ``thetas[i]``.
    """

    ext: Extension
    family: LocalFamily
    sections: Tuple[GroupHom, ...]

    def __post_init__(self) -> None:
        if self.family.gamma != self.ext.Gamma:
            raise ValidationError("family base and extension base differ")
        if len(self.sections) != len(self.family.thetas):
            raise ValidationError(
                f"{len(self.sections)} local sections for {len(self.family.thetas)} local maps"
            )
        for i, (theta, s) in enumerate(zip(self.family.thetas, self.sections)):
            if s.source != theta.source or s.target != self.ext.E:
                raise ValidationError(f"local section {i} has the wrong source or target")
            if compose(self.ext.pi, s).map != theta.map:
                raise NotASection(
                    f"local section {i} does not project back to its local map"
                )


# ---------------------------------------------------------------------------
# density and transport


def check_density(family: LocalFamily) -> bool:
    """Do the conjugates of the local images exhaust the base group?"""
    covered: set = set()
    for theta in family.thetas:
        covered |= union_of_conjugates(family.gamma, image(theta)).union
    return len(covered) == family.gamma.order


def transport_family(family: LocalFamily, sub: Subgroup) -> LocalFamily:
    """Restrict a family to a subgroup of its base.

    The new locals are indexed by (old local, coset representative): each is
    the preimage of the conjugated subgroup, mapped in by conjugated
    inclusion.  Density is preserved and asserted when the input has it.
    """
    g = family.gamma
    if sub.parent != g:
        raise ValidationError("transport target must be a subgroup of the base")
    gprime, _incl = subgroup_as_group(sub)
    back = {e: i for i, e in enumerate(sub.elements)}
    reps = []
    seen: set = set()
    for x in g.elements:
        if x in seen:
            continue
        coset = {g.mul(h, x) for h in sub.elements}
        seen |= coset
        reps.append(x)
    thetas = []
    for theta in family.thetas:
        for r in reps:
            fibre = [
                x for x in theta.source.elements if g.conj(r, theta.map[x]) in back
            ]
            local_sub = subgroup(theta.source, fibre)
            gi, gi_incl = subgroup_as_group(local_sub)
            new_map = tuple(
                back[g.conj(r, theta.map[gi_incl.map[x]])] for x in gi.elements
            )
            thetas.append(GroupHom(gi, gprime, new_map))
    out = LocalFamily(gprime, tuple(thetas))
    if check_density(family) and not check_density(out):
        raise AssertionError("transport lost density; the covering argument is broken")
    return out


def diagonal_fibre(alpha: Cocycle, family: LocalFamily) -> Tuple[Cocycle, ...]:
    """All classes over the base whose local restrictions match alpha's.

    Returns representatives; always contains the class of alpha itself, so
    the fibre is finite and nonempty by construction.
    """
    coeff = alpha.parent
    if coeff.gamma != family.gamma:
        raise ValidationError("cocycle does not live over the family's base group")
    target = [restrict_class(theta, alpha) for theta in family.thetas]
    out = []
    for beta in h1(coeff).representatives:
        if all(
            cohomologous(restrict_class(theta, beta), target[i]) is not None
            for i, theta in enumerate(family.thetas)
        ):
            out.append(beta)
    return tuple(out)


# ---------------------------------------------------------------------------
# properties (b) and (c)


def _interpolates(
    u: GroupHom,
    thetas: Sequence[GroupHom],
    locs: Sequence[GroupHom],
    ambient: FiniteGroup,
    conjugators: Optional[Sequence[int]] = None,
) -> bool:
    pool = ambient.elements if conjugators is None else conjugators
    for theta, t in zip(thetas, locs):
        hit = False
        for e in pool:
            if all(
                u.map[theta.map[x]] == ambient.conj(e, t.map[x])
                for x in theta.source.elements
            ):
                hit = True
                break
        if not hit:
            return False
    return True


def interpolating_homs(ls: LocalSections) -> Iterator[GroupHom]:
    """All homomorphisms into the middle group matching every local section
    up to conjugation, in canonical order."""
    for u in enumerate_homs(ls.ext.Gamma, ls.ext.E):
        if _interpolates(u, ls.family.thetas, ls.sections, ls.ext.E):
            yield u


def decide_b(ls: LocalSections) -> Optional[GroupHom]:
    """The least interpolating homomorphism, or None."""
    return next(interpolating_homs(ls), None)


def decide_c(ls: LocalSections) -> Optional[GroupHom]:
    """The least section interpolating with conjugators from the kernel."""
    kernel_elements = ls.ext.iota.map
    for s in enumerate_sections(ls.ext).sections:
        if _interpolates(s, ls.family.thetas, ls.sections, ls.ext.E, kernel_elements):
            return s
    return None


# ---------------------------------------------------------------------------
# coefficient corpora and the descent properties


@dataclass(frozen=True)
class CorpusEntry:
    """One coefficient system together with where it came from."""

    coeff: GammaGroup
    provenance: str

    def __post_init__(self) -> None:
        if self.provenance not in (CONSTANT_QUOTIENT, A_QUOTIENT_SECTION, USER_SUPPLIED):
            raise ValidationError(f"unknown provenance tag {self.provenance!r}")


@dataclass(frozen=True)
class CoefficientCorpus:
    """An ordered list of coefficient systems over a fixed base group."""

    entries: Tuple[CorpusEntry, ...]


def _constant_quotient_entries(
    ext: Extension, bound: Optional[int] = None
) -> Tuple[CorpusEntry, ...]:
    out = []
    seen = set()
    for n in all_normal_subgroups(ext.E):
        quot, _ = quotient(ext.E, n)
        if bound is not None and quot.order > bound:
            continue
        coeff = constant_coefficients(ext.Gamma, quot)
        if coeff in seen:
            continue
        seen.add(coeff)
        out.append(CorpusEntry(coeff, CONSTANT_QUOTIENT))
    return tuple(out)


def _kernel_quotient_entries(ext: Extension, s0: GroupHom) -> Tuple[CorpusEntry, ...]:
    """Quotients of the embedded kernel by normal-in-E subgroups, with the
    base acting by conjugation through a chosen section."""
    a_sub = image(ext.iota)
    a_grp, incl = subgroup_as_group(a_sub)
    back = {e: i for i, e in enumerate(a_sub.elements)}
    out = []
    seen = set()
    for v in all_normal_subgroups_between(a_sub, ext.E):
        v_in_a = subgroup(a_grp, (back[e] for e in v.elements))
        quot, qmap = quotient(a_grp, v_in_a)
        reps = {}
        for x in a_grp.elements:
            reps.setdefault(qmap.map[x], x)
        rows = []
        for g in ext.Gamma.elements:
            cg = s0.map[g]
            row = tuple(
                qmap.map[back[ext.E.conj(cg, incl.map[reps[y]])]]
                for y in quot.elements
            )
            rows.append(row)
        coeff = GammaGroup(ext.Gamma, quot, tuple(rows))
        if coeff in seen:
            continue
        seen.add(coeff)
        out.append(CorpusEntry(coeff, A_QUOTIENT_SECTION))
    return tuple(out)


def standard_corpus(
    ls: LocalSections, extra: Iterable[GammaGroup] = ()
) -> CoefficientCorpus:
    """The proof-sufficient corpus: all constant quotients of the middle
    group, the kernel quotients with section action when a section exists,
    and any user-supplied systems."""
    entries = list(_constant_quotient_entries(ls.ext))
    report = enumerate_sections(ls.ext)
    if report.sections:
        entries.extend(_kernel_quotient_entries(ls.ext, report.sections[0]))
    for coeff in extra:
        entries.append(CorpusEntry(coeff, USER_SUPPLIED))
    return CoefficientCorpus(tuple(entries))


@dataclass(frozen=True)
class DescentCheck:
    """Outcome of a survival check over a coefficient corpus.

    When it fails, the first failing coefficient system and class are kept
    as the witness; ``classes_checked`` counts the classes examined.
    """

    holds: bool
    failing_entry: Optional[CorpusEntry]
    failing_class: Optional[Cocycle]
    classes_checked: int


def _diagonal_failure(
    ls: LocalSections,
    coeff: GammaGroup,
    class_filter: Optional[Callable[[Cocycle], bool]] = None,
) -> Tuple[Optional[Cocycle], int]:
    """First class over the middle group missing from the diagonal image."""
    ext = ls.ext
    coeff_e = pullback_coefficients(ext.pi, coeff)
    downstairs = h1(coeff).representatives
    checked = 0
    for alpha in h1(coeff_e).representatives:
        if class_filter is not None and not class_filter(alpha):
            continue
        checked += 1
        pulls = [pullback_class(s, alpha, ext) for s in ls.sections]
        hit = False
        for beta in downstairs:
            if all(
                cohomologous(restrict_class(theta, beta), pulls[i]) is not None
                for i, theta in enumerate(ls.family.thetas)
            ):
                hit = True
                break
        if not hit:
            return alpha, checked
    return None, checked


def _run_corpus(
    ls: LocalSections,
    entries: Sequence[CorpusEntry],
    class_filter: Optional[Callable[[Cocycle], bool]] = None,
) -> DescentCheck:
    total = 0
    for entry in entries:
        if entry.coeff.gamma != ls.ext.Gamma:
            raise ValidationError("corpus entry does not act through the base group")
        bad, checked = _diagonal_failure(ls, entry.coeff, class_filter)
        total += checked
        if bad is not None:
            return DescentCheck(False, entry, bad, total)
    return DescentCheck(True, None, None, total)


def decide_a(ls: LocalSections, corpus: CoefficientCorpus) -> DescentCheck:
    """Survival of the local data in every coefficient system of the corpus."""
    return _run_corpus(ls, corpus.entries)


def decide_a_prime(ls: LocalSections, bound: Optional[int] = None) -> DescentCheck:
    """Survival in all constant quotients of the middle group.

    ``bound`` caps the quotient order; leaving it unset keeps the full
    quotient, which is what makes this property match (b) exactly.
    """
    return _run_corpus(ls, _constant_quotient_entries(ls.ext, bound))


def _surjective_on_kernel(ext: Extension) -> Callable[[Cocycle], bool]:
    kernel_elements = image(ext.iota).elements

    def keep(alpha: Cocycle) -> bool:
        img = {alpha.values[e] for e in kernel_elements}
        return len(img) == alpha.parent.M.order

    return keep


def decide_a_doubleprime(ls: LocalSections) -> DescentCheck:
    """Survival in the kernel quotients, restricted to classes surjective on
    the embedded kernel.

    Uses the first section for the conjugation action; with no section the
    check falls back to constant quotients, still restricted to classes
    surjective on the kernel's image.
    """
    report = enumerate_sections(ls.ext)
    if report.sections:
        entries = _kernel_quotient_entries(ls.ext, report.sections[0])
    else:
        entries = _constant_quotient_entries(ls.ext)
    return _run_corpus(ls, entries, _surjective_on_kernel(ls.ext))


# ---------------------------------------------------------------------------
# the equivalence report


@dataclass(frozen=True)
class EquivalenceReport:
    """All five properties, the density flag, witnesses, and the verdicts
    for every implication that is a theorem at this scale."""

    density: bool
    split: bool
    a: DescentCheck
    a_prime: DescentCheck
    a_doubleprime: DescentCheck
    b: Optional[GroupHom]
    c: Optional[GroupHom]
    implications: Tuple[Tuple[str, bool], ...]

    @property
    def holds_b(self) -> bool:
        return self.b is not None

    @property
    def holds_c(self) -> bool:
        return self.c is not None

    @property
    def all_implications_hold(self) -> bool:
        return all(v for _, v in self.implications)


def verify_equivalences(
    ls: LocalSections, extra: Iterable[GammaGroup] = ()
) -> EquivalenceReport:
    """Decide everything and check the implication diagram.

    The implications asserted: (c) => (a) => (a') and (a) => (a''),
    (b) <=> (a'), split and (a'') together give (c), and density collapses
    (a), (a'), (b), (c) to a single truth value.
    """
    density = check_density(ls.family)
    split = bool(enumerate_sections(ls.ext).sections)
    a = decide_a(ls, standard_corpus(ls, extra))
    a_prime = decide_a_prime(ls)
    a_double = decide_a_doubleprime(ls)
    b = decide_b(ls)
    c = decide_c(ls)
    hb, hc = b is not None, c is not None
    implications = (
        ("c=>a", (not hc) or a.holds),
        ("a=>a'", (not a.holds) or a_prime.holds),
        ("a=>a''", (not a.holds) or a_double.holds),
        ("b=>a'", (not hb) or a_prime.holds),
        ("a'=>b", (not a_prime.holds) or hb),
        ("split&a''=>c", (not (split and a_double.holds)) or hc),
        ("density=>abc-agree", (not density) or (a.holds == a_prime.holds == hb == hc)),
    )
    return EquivalenceReport(density, split, a, a_prime, a_double, b, c, implications)


# ---------------------------------------------------------------------------
# the constructive section from a dense interpolating homomorphism


def interpolating_section_from_hom(
    ls: LocalSections, u: GroupHom
) -> Tuple[GroupHom, Tuple[int, ...]]:
    """Turn an interpolating homomorphism into an interpolating section.

    Requires the composite with the projection to be bijective (density
    guarantees this through class preservation).  The section is
    ``u`` precomposed with that composite's inverse; each returned
    conjugator is re-validated to lie in the kernel's image and to move the
    local section onto the new section's restriction.
    """
    ext = ls.ext
    if u.source != ext.Gamma or u.target != ext.E:
        raise ValidationError("the homomorphism must map the base into the middle group")
    phi = compose(ext.pi, u)
    if not is_bijective(phi):
        raise ValidationError(
            "projection composed with the homomorphism must be bijective"
        )
    phi_inv = inverse_hom(phi)
    s = compose(u, phi_inv)
    if not ext.is_section(s):
        raise AssertionError("constructed map is not a section")
    gam, mid = ext.Gamma, ext.E
    kernel_elements = set(ext.iota.map)
    conjugators = []
    for theta, t in zip(ls.family.thetas, ls.sections):
        gamma_i = None
        for e in mid.elements:
            if all(
                u.map[theta.map[x]] == mid.conj(e, t.map[x])
                for x in theta.source.elements
            ):
                gamma_i = e
                break
        if gamma_i is None:
            raise ValidationError("the homomorphism does not interpolate a local section")
        sigma_i = ext.pi.map[gamma_i]
        tau_i = phi_inv.map[gam.inv(sigma_i)]
        c_i = mid.mul(u.map[tau_i], gamma_i)
        if c_i not in kernel_elements:
            raise AssertionError(f"conjugator {c_i} escapes the embedded kernel")
        if any(
            s.map[theta.map[x]] != mid.conj(c_i, t.map[x])
            for x in theta.source.elements
        ):
            raise AssertionError("re-validation of the constructed conjugator failed")
        conjugators.append(c_i)
    return s, tuple(conjugators)


# ---------------------------------------------------------------------------
# towers


@dataclass(frozen=True)
class TowerResult:
    """Per-level witness counts and, when possible, a compatible chain."""

    level_sizes: Tuple[int, ...]
    chain: Optional[Tuple[GroupHom, ...]]
    empty_levels: Tuple[int, ...]


def pushout_tower(
    ext: Extension, subs: Sequence[Subgroup]
) -> Tuple[Tuple[Extension, ...], Tuple[GroupHom, ...]]:
    """The tower obtained by pushing out along an ascending chain of kernel
    subgroups, with its connecting surjections."""
    from .extensions import pushout

    levels = [ext]
    quots = []
    for i, sub in enumerate(subs):
        if sub.parent != ext.A:
            raise ValidationError(f"tower subgroup {i} does not live in the kernel group")
        if i > 0 and not set(subs[i - 1].elements) <= set(sub.elements):
            raise ValidationError("tower subgroups must be ascending")
        smaller, q = pushout(ext, sub)
        levels.append(smaller)
        quots.append(q)
    maps = []
    for i in range(len(levels) - 1):
        upper = quots[i - 1] if i > 0 else None
        lower = quots[i]
        if upper is None:
            maps.append(lower)
        else:
            reps = {}
            for x in upper.source.elements:
                reps.setdefault(upper.map[x], x)
            maps.append(
                GroupHom(
                    upper.target,
                    lower.target,
                    tuple(lower.map[reps[y]] for y in upper.target.elements),
                )
            )
    return tuple(levels), tuple(maps)


def tower_limit_sections(
    levels: Sequence[Extension], maps: Sequence[GroupHom], ls: LocalSections
) -> TowerResult:
    """Witness sets at every level of a tower, and a compatible chain.

    Level j's witnesses are homomorphisms into level j's middle group that
    interpolate the pushed-down local sections.  When no level is empty the
    least top witness pushes to a compatible chain, mirroring the
    finite-limit compactness argument; otherwise the empty levels are
    reported.
    """
    if len(maps) != len(levels) - 1:
        raise IncompatibleTower(
            f"{len(maps)} connecting maps for {len(levels)} levels"
        )
    if ls.ext != levels[0]:
        raise IncompatibleTower("local sections do not live at the top level")
    for j, ext in enumerate(levels):
        if ext.Gamma != ls.ext.Gamma:
            raise IncompatibleTower(f"level {j} has a different base group")
    for j, q in enumerate(maps):
        if q.source != levels[j].E or q.target != levels[j + 1].E:
            raise IncompatibleTower(f"connecting map {j} does not join its levels")
        if not is_surjective(q):
            raise IncompatibleTower(f"connecting map {j} is not surjective")
        if compose(levels[j + 1].pi, q).map != levels[j].pi.map:
            raise IncompatibleTower(
                f"connecting map {j} does not commute with the projections"
            )
    gam = ls.ext.Gamma
    proj = identity_hom(levels[0].E)
    witness_sets = []
    for j, ext in enumerate(levels):
        pushed = [compose(proj, s) for s in ls.sections]
        witnesses = tuple(
            u
            for u in enumerate_homs(gam, ext.E)
            if _interpolates(u, ls.family.thetas, pushed, ext.E)
        )
        witness_sets.append(witnesses)
        if j < len(maps):
            proj = compose(maps[j], proj)
    sizes = tuple(len(w) for w in witness_sets)
    empty = tuple(j for j, w in enumerate(witness_sets) if not w)
    if empty:
        return TowerResult(sizes, None, empty)
    chain = [witness_sets[0][0]]
    for j, q in enumerate(maps):
        nxt = compose(q, chain[-1])
        if nxt.map not in {w.map for w in witness_sets[j + 1]}:
            raise AssertionError(
                f"pushed witness fell outside level {j + 1}'s witness set"
            )
        chain.append(nxt)
    return TowerResult(sizes, tuple(chain), ())
