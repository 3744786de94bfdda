"""Local families, the five interpolation properties, density, towers."""

from __future__ import annotations

import pytest

from oracles import oracle_density, oracle_interpolating_homs
from seclab.cohomology import Cocycle, constant_coefficients
from seclab.errors import IncompatibleTower, NotASection, ValidationError
from seclab.extensions import enumerate_sections, make_extension
from seclab.groups import (
    GroupHom,
    cyclic_group,
    direct_product,
    full_subgroup,
    group_from_permutations,
    identity_hom,
    image,
    subgroup,
    subgroup_as_group,
    subgroup_generated,
    trivial_group,
    trivial_subgroup,
)
from seclab.localglobal import (
    A_QUOTIENT_SECTION,
    CONSTANT_QUOTIENT,
    USER_SUPPLIED,
    CoefficientCorpus,
    CorpusEntry,
    LocalFamily,
    LocalSections,
    check_density,
    decide_a,
    decide_a_doubleprime,
    decide_a_prime,
    decide_b,
    decide_c,
    diagonal_fibre,
    interpolating_homs,
    interpolating_section_from_hom,
    pushout_tower,
    standard_corpus,
    tower_limit_sections,
    transport_family,
    verify_equivalences,
)

C2 = cyclic_group(2)
C3 = cyclic_group(3)
C4 = cyclic_group(4)
V4 = direct_product(C2, C2, label="C2xC2")
S3 = group_from_permutations(3, [(1, 0, 2), (1, 2, 0)], label="S3")[0]
SIGN = GroupHom(S3, C2, (0, 1, 1, 0, 0, 1))


def c4_instance():
    """Z/4 over Z/2 with a single trivial local: no sections, yet (b) holds."""
    ext = make_extension(GroupHom(C2, C4, (0, 2)), GroupHom(C4, C2, (0, 1, 0, 1)))
    t = trivial_group()
    fam = LocalFamily(C2, (GroupHom(t, C2, (0,)),))
    return LocalSections(ext, fam, (GroupHom(t, C4, (0,)),))


def v4_instance():
    """V4 over C2 with two non-conjugate local sections: everything fails."""
    ext = make_extension(GroupHom(C2, V4, (0, 1)), GroupHom(V4, C2, (0, 0, 1, 1)))
    th = identity_hom(C2)
    fam = LocalFamily(C2, (th, th))
    return LocalSections(
        ext, fam, (GroupHom(C2, V4, (0, 2)), GroupHom(C2, V4, (0, 3)))
    )


def s3_twisted_instance():
    """S3 over C2 with the local section twisted by a rotation."""
    ext = make_extension(GroupHom(C3, S3, (0, 3, 4)), SIGN)
    s0 = GroupHom(C2, S3, (0, 2))
    s1 = GroupHom(C2, S3, tuple(S3.conj(3, s0.map[x]) for x in C2.elements))
    fam = LocalFamily(C2, (identity_hom(C2),))
    return LocalSections(ext, fam, (s1,))


def s3xc2_dense_instance():
    """Split central extension of S3 with locals on both cyclic subgroup types."""
    e = direct_product(S3, C2)
    pi = GroupHom(e, S3, tuple(x // 2 for x in e.elements))
    ext = make_extension(GroupHom(C2, e, (0, 1)), pi)
    s0 = GroupHom(S3, e, tuple(2 * g for g in S3.elements))
    thetas, sections = [], []
    for gen in (2, 3):
        sub = subgroup_generated(S3, [gen])
        g_i, inc = subgroup_as_group(sub)
        theta = GroupHom(g_i, S3, inc.map)
        thetas.append(theta)
        sections.append(
            GroupHom(g_i, e, tuple(s0.map[theta.map[x]] for x in g_i.elements))
        )
    fam = LocalFamily(S3, tuple(thetas))
    return LocalSections(ext, fam, tuple(sections))


def s3_family():
    thetas = []
    for gen in (2, 3):
        sub = subgroup_generated(S3, [gen])
        g_i, inc = subgroup_as_group(sub)
        thetas.append(GroupHom(g_i, S3, inc.map))
    return LocalFamily(S3, tuple(thetas))


# ---------------------------------------------------------------------------
# containers


def test_local_family_rejects_wrong_target():
    with pytest.raises(ValidationError):
        LocalFamily(C2, (identity_hom(C3),))


def test_local_sections_rejects_non_lift():
    ext = make_extension(GroupHom(C2, V4, (0, 1)), GroupHom(V4, C2, (0, 0, 1, 1)))
    fam = LocalFamily(C2, (identity_hom(C2),))
    with pytest.raises(NotASection):
        LocalSections(ext, fam, (GroupHom(C2, V4, (0, 1)),))


def test_local_sections_rejects_count_mismatch():
    ext = make_extension(GroupHom(C2, V4, (0, 1)), GroupHom(V4, C2, (0, 0, 1, 1)))
    fam = LocalFamily(C2, (identity_hom(C2),))
    with pytest.raises(ValidationError):
        LocalSections(ext, fam, ())


def test_corpus_entry_rejects_unknown_tag():
    coeff = constant_coefficients(C2, C2)
    with pytest.raises(ValidationError):
        CorpusEntry(coeff, "folklore")


# ---------------------------------------------------------------------------
# density


def test_density_frozen_cases():
    assert check_density(s3_family())
    # a single transposition subgroup covers only 4 of the 6 elements
    sub = subgroup_generated(S3, [2])
    g_t, inc = subgroup_as_group(sub)
    assert not check_density(LocalFamily(S3, (GroupHom(g_t, S3, inc.map),)))
    # no locals never covers, even over the trivial group
    assert not check_density(LocalFamily(trivial_group(), ()))
    t = trivial_group()
    assert check_density(LocalFamily(t, (identity_hom(t),)))


def test_density_matches_oracle():
    fam = s3_family()
    images = [sorted(image(theta).elements) for theta in fam.thetas]
    assert check_density(fam) == oracle_density(S3.table, images)
    sub = subgroup_generated(S3, [1])
    g_t, inc = subgroup_as_group(sub)
    solo = LocalFamily(S3, (GroupHom(g_t, S3, inc.map),))
    assert check_density(solo) == oracle_density(S3.table, [sorted(sub.elements)])


# ---------------------------------------------------------------------------
# transport


def test_transport_to_index_two_subgroup():
    fam = s3_family()
    a3 = subgroup_generated(S3, [3])
    out = transport_family(fam, a3)
    # two locals times two coset representatives
    assert len(out.thetas) == 4
    assert out.gamma.order == 3
    assert check_density(out)
    # the transposition local meets A3 only in the identity
    orders = sorted(theta.source.order for theta in out.thetas)
    assert orders == [1, 1, 3, 3]


def test_transport_rejects_foreign_subgroup():
    fam = s3_family()
    with pytest.raises(ValidationError):
        transport_family(fam, subgroup(C4, (0, 2)))


# ---------------------------------------------------------------------------
# diagonal fibres


def test_diagonal_fibre_sign_class():
    fam = s3_family()
    coeff = constant_coefficients(S3, C2)
    alpha = Cocycle(coeff, SIGN.map)
    fib = diagonal_fibre(alpha, fam)
    # the transposition local pins the restriction, only the sign class fits
    assert len(fib) == 1
    assert fib[0].values == SIGN.map


def test_diagonal_fibre_rotation_only_family():
    sub = subgroup_generated(S3, [3])
    g_r, inc = subgroup_as_group(sub)
    fam = LocalFamily(S3, (GroupHom(g_r, S3, inc.map),))
    coeff = constant_coefficients(S3, C2)
    alpha = Cocycle(coeff, SIGN.map)
    # sign dies on rotations, so the trivial class joins the fibre
    assert len(diagonal_fibre(alpha, fam)) == 2


def test_diagonal_fibre_rejects_wrong_base():
    fam = s3_family()
    alpha = Cocycle(constant_coefficients(C2, C2), (0, 0))
    with pytest.raises(ValidationError):
        diagonal_fibre(alpha, fam)


# ---------------------------------------------------------------------------
# properties (b) and (c)


def test_c4_instance_has_hom_but_no_section():
    ls = c4_instance()
    assert enumerate_sections(ls.ext).count == 0
    homs = [u.map for u in interpolating_homs(ls)]
    assert homs == [(0, 0), (0, 2)]
    assert decide_b(ls).map == (0, 0)
    assert decide_c(ls) is None


def test_interpolating_homs_match_oracle():
    for ls in (c4_instance(), v4_instance(), s3_twisted_instance()):
        got = [u.map for u in interpolating_homs(ls)]
        want = oracle_interpolating_homs(
            ls.ext.Gamma.table,
            ls.ext.E.table,
            [t.map for t in ls.family.thetas],
            [s.map for s in ls.sections],
        )
        assert got == want


def test_v4_instance_fails_b_and_c():
    ls = v4_instance()
    assert decide_b(ls) is None
    assert decide_c(ls) is None


def test_twisted_local_recovered_with_kernel_conjugator():
    ls = s3_twisted_instance()
    wit = decide_c(ls)
    assert wit is not None
    assert ls.ext.pi.map[wit.map[1]] == 1  # really a section


# ---------------------------------------------------------------------------
# corpora and the descent checks


def test_standard_corpus_shape():
    ls = s3_twisted_instance()
    corpus = standard_corpus(ls)
    tags = [e.provenance for e in corpus.entries]
    # quotients of S3 by 1, A3, S3 and kernel quotients by 1, A3
    assert tags.count(CONSTANT_QUOTIENT) == 3
    assert tags.count(A_QUOTIENT_SECTION) == 2
    extra = constant_coefficients(C2, C3)
    with_extra = standard_corpus(ls, [extra])
    assert with_extra.entries[-1].provenance == USER_SUPPLIED


def test_descent_checks_on_failing_instance():
    ls = v4_instance()
    a = decide_a(ls, standard_corpus(ls))
    assert not a.holds
    assert a.failing_entry.provenance == CONSTANT_QUOTIENT
    assert a.failing_class is not None
    assert not decide_a_prime(ls).holds
    assert not decide_a_doubleprime(ls).holds


def test_descent_checks_on_good_instances():
    for ls in (c4_instance(), s3_twisted_instance(), s3xc2_dense_instance()):
        assert decide_a(ls, standard_corpus(ls)).holds
        assert decide_a_prime(ls).holds
        assert decide_a_doubleprime(ls).holds


def test_a_prime_bound_keeps_only_small_quotients():
    ls = v4_instance()
    # only the trivial quotient survives a bound of 1, where nothing can fail
    assert decide_a_prime(ls, bound=1).holds
    assert not decide_a_prime(ls, bound=4).holds


def test_decide_a_rejects_foreign_corpus():
    ls = c4_instance()
    corpus = CoefficientCorpus(
        (CorpusEntry(constant_coefficients(C3, C2), USER_SUPPLIED),)
    )
    with pytest.raises(ValidationError):
        decide_a(ls, corpus)


# ---------------------------------------------------------------------------
# the equivalence report


def test_report_on_c4_instance():
    rep = verify_equivalences(c4_instance())
    assert (rep.a.holds, rep.a_prime.holds, rep.a_doubleprime.holds) == (
        True,
        True,
        True,
    )
    assert rep.holds_b and not rep.holds_c
    assert not rep.split and not rep.density
    assert rep.all_implications_hold


def test_report_on_failing_instance():
    rep = verify_equivalences(v4_instance())
    assert not any(
        (rep.a.holds, rep.a_prime.holds, rep.a_doubleprime.holds, rep.holds_b, rep.holds_c)
    )
    assert rep.split
    assert rep.all_implications_hold


def test_report_on_dense_instances():
    for ls in (s3_twisted_instance(), s3xc2_dense_instance()):
        rep = verify_equivalences(ls)
        assert rep.density
        assert rep.a.holds and rep.a_prime.holds and rep.a_doubleprime.holds
        assert rep.holds_b and rep.holds_c
        assert rep.all_implications_hold


def test_implication_labels_are_stable():
    rep = verify_equivalences(c4_instance())
    assert [name for name, _ in rep.implications] == [
        "c=>a",
        "a=>a'",
        "a=>a''",
        "b=>a'",
        "a'=>b",
        "split&a''=>c",
        "density=>abc-agree",
    ]


# ---------------------------------------------------------------------------
# the constructive section


def test_section_from_hom_with_nontrivial_conjugator():
    ls = s3_twisted_instance()
    u = GroupHom(C2, S3, (0, 2))  # interpolates only up to a rotation
    s, conjs = interpolating_section_from_hom(ls, u)
    assert s.map == (0, 2)
    assert len(conjs) == 1
    assert conjs[0] in {3, 4}  # a genuine rotation, inside the kernel image


def test_section_from_hom_rejects_non_bijective_composite():
    ls = c4_instance()
    with pytest.raises(ValidationError):
        interpolating_section_from_hom(ls, GroupHom(C2, C4, (0, 2)))


def test_section_from_hom_rejects_non_interpolating_hom():
    ls = s3_twisted_instance()
    # the sign section composed with a fresh local it never matches
    other = LocalSections(
        ls.ext,
        LocalFamily(C2, (identity_hom(C2), identity_hom(C2))),
        (ls.sections[0], GroupHom(C2, S3, (0, 5))),
    )
    rep = verify_equivalences(other)
    assert rep.all_implications_hold  # sanity: conjugate sections stay coherent


# ---------------------------------------------------------------------------
# towers


def test_tower_with_empty_top_level():
    e2 = direct_product(C3, C3)
    pi = GroupHom(e2, C3, tuple(x // 3 for x in e2.elements))
    ext = make_extension(GroupHom(C3, e2, (0, 1, 2)), pi)
    fam = LocalFamily(C3, (identity_hom(C3), identity_hom(C3)))
    ls = LocalSections(
        ext, fam, (GroupHom(C3, e2, (0, 3, 6)), GroupHom(C3, e2, (0, 4, 8)))
    )
    levels, maps = pushout_tower(ext, [full_subgroup(C3)])
    res = tower_limit_sections(levels, maps, ls)
    assert res.level_sizes == (0, 1)
    assert res.empty_levels == (0,)
    assert res.chain is None


def test_tower_chain_on_split_instance():
    ls = s3_twisted_instance()
    levels, maps = pushout_tower(
        ls.ext, [trivial_subgroup(C3), full_subgroup(C3)]
    )
    res = tower_limit_sections(levels, maps, ls)
    assert len(res.level_sizes) == 3
    assert res.empty_levels == ()
    assert res.chain is not None and len(res.chain) == 3
    for q, u, v in zip(maps, res.chain, res.chain[1:]):
        assert tuple(q.map[x] for x in u.map) == v.map


def test_pushout_tower_rejects_descending_chain():
    ls = s3_twisted_instance()
    with pytest.raises(ValidationError):
        pushout_tower(ls.ext, [full_subgroup(C3), trivial_subgroup(C3)])


def test_tower_rejects_wrong_map_count():
    ls = s3_twisted_instance()
    levels, maps = pushout_tower(ls.ext, [full_subgroup(C3)])
    with pytest.raises(IncompatibleTower):
        tower_limit_sections(levels, (), ls)


def test_tower_rejects_foreign_local_sections():
    ls = s3_twisted_instance()
    levels, maps = pushout_tower(ls.ext, [full_subgroup(C3)])
    with pytest.raises(IncompatibleTower):
        tower_limit_sections(levels[1:], (), ls)
