"""Cocycle enumeration, class partitions, twisting, lifting dictionary."""

from __future__ import annotations

import pytest

from oracles import oracle_cocycles, oracle_h1_class_count
from seclab.errors import (
    ActionMismatch,
    NotACocycle,
    NotACocycleForThisAction,
    NotAnAction,
    NotTrivialOnKernel,
    ValidationError,
)
from seclab.cohomology import (
    Cocycle,
    GammaGroup,
    cohomologous,
    conjugation_coefficients,
    constant_coefficients,
    descend_class,
    enumerate_cocycles,
    h1,
    inner_pullback,
    lifts_up_to_conjugacy,
    pullback_class,
    pullback_coefficients,
    restrict_class,
    trivial_cocycle,
    twist_coefficients,
    twist_lift,
)
from seclab.extensions import make_extension, enumerate_sections
from seclab.groups import (
    GroupHom,
    cyclic_group,
    direct_product,
    enumerate_homs,
    group_from_permutations,
    identity_hom,
    image,
    subgroup_as_group,
    subgroup_generated,
)

C2 = cyclic_group(2)
C3 = cyclic_group(3)
C4 = cyclic_group(4)


def s3():
    return group_from_permutations(3, [(1, 0, 2), (1, 2, 0)], label="S3")[0]


def s3_over_c2():
    grp = s3()
    sign = enumerate_homs(grp, C2)[1]
    incl = subgroup_as_group(subgroup_generated(grp, [3]))[1]
    return make_extension(incl, sign)


def c4_over_c2():
    return make_extension(GroupHom(C2, C4, (0, 2)), GroupHom(C4, C2, (0, 1, 0, 1)))


INVERSION_ON_C3 = GammaGroup(C2, C3, ((0, 1, 2), (0, 2, 1)))


# --- coefficient systems ----------------------------------------------------


def test_action_must_be_automorphisms():
    with pytest.raises(NotAnAction):
        GammaGroup(C2, C3, ((0, 1, 2), (1, 0, 2)))  # swap is not an automorphism of C3


def test_action_rows_must_compose():
    rows = ((0, 1, 2, 3), (0, 3, 2, 1), (0, 1, 2, 3), (0, 1, 2, 3))
    with pytest.raises(NotAnAction):
        GammaGroup(C4, C4, rows)  # 1 acts by inversion but 1*1 acts trivially


def test_identity_must_act_trivially():
    with pytest.raises(NotAnAction):
        GammaGroup(C2, C3, ((0, 2, 1), (0, 1, 2)))


def test_conjugation_coefficients_on_kernel():
    ext = s3_over_c2()
    coeff = conjugation_coefficients(image(ext.iota), identity_hom(ext.E))
    assert coeff.M.order == 3
    assert coeff.embed is not None
    # a transposition inverts the rotation subgroup
    assert coeff.action[1] == (0, 2, 1)


# --- cocycles and classes ----------------------------------------------------


def test_cocycle_validation():
    with pytest.raises(NotACocycle):
        Cocycle(INVERSION_ON_C3, (1, 0))
    with pytest.raises(NotACocycle):
        Cocycle(constant_coefficients(C2, C3), (0, 1))  # not a hom C2 -> C3


def test_frozen_counts_inversion_on_c3():
    cocs = enumerate_cocycles(INVERSION_ON_C3)
    assert [c.values for c in cocs] == [(0, 0), (0, 1), (0, 2)]
    classes = h1(INVERSION_ON_C3)
    assert classes.class_count == 1
    assert classes.representatives[0].values == (0, 0)


def test_frozen_counts_trivial_and_c4_inversion():
    triv = constant_coefficients(C2, C2)
    assert len(enumerate_cocycles(triv)) == 2
    assert h1(triv).class_count == 2
    inv4 = GammaGroup(C2, C4, ((0, 1, 2, 3), (0, 3, 2, 1)))
    assert len(enumerate_cocycles(inv4)) == 4
    assert h1(inv4).class_count == 2


@pytest.mark.parametrize(
    "coeff",
    [
        INVERSION_ON_C3,
        constant_coefficients(C2, C2),
        constant_coefficients(C3, C3),
        GammaGroup(C2, C4, ((0, 1, 2, 3), (0, 3, 2, 1))),
        constant_coefficients(direct_product(C2, C2), C2),
    ],
)
def test_cocycles_match_bruteforce_oracle(coeff):
    got = [c.values for c in enumerate_cocycles(coeff)]
    want = oracle_cocycles(
        [list(r) for r in coeff.gamma.table],
        [list(r) for r in coeff.M.table],
        [list(r) for r in coeff.action],
    )
    assert got == [tuple(w) for w in want]
    assert h1(coeff).class_count == oracle_h1_class_count(
        [list(r) for r in coeff.gamma.table],
        [list(r) for r in coeff.M.table],
        [list(r) for r in coeff.action],
    )


def test_nonabelian_conjugation_cocycles_match_oracle():
    grp = s3()
    coeff = conjugation_coefficients(
        subgroup_generated(grp, [3]), identity_hom(grp)
    )
    got = [c.values for c in enumerate_cocycles(coeff)]
    want = oracle_cocycles(
        [list(r) for r in grp.table],
        [list(r) for r in coeff.M.table],
        [list(r) for r in coeff.action],
    )
    assert len(got) == 9
    assert got == [tuple(w) for w in want]


def test_classes_partition_and_lex_least_representatives():
    coeff = conjugation_coefficients(
        subgroup_generated(s3(), [3]), identity_hom(s3())
    )
    classes = h1(coeff)
    covered = sorted(i for cls in classes.classes for i in cls)
    assert covered == list(range(len(classes.cocycles)))
    for cls, rep in zip(classes.classes, classes.representatives):
        assert rep.values == min(classes.cocycles[i].values for i in cls)


def test_cohomologous_is_symmetric_and_reflexive():
    cocs = enumerate_cocycles(INVERSION_ON_C3)
    for a in cocs:
        assert cohomologous(a, a) is not None
        for b in cocs:
            assert (cohomologous(a, b) is None) == (cohomologous(b, a) is None)
    other = trivial_cocycle(constant_coefficients(C2, C3))
    with pytest.raises(ValidationError):
        cohomologous(cocs[0], other)


# --- conjugation pullback ----------------------------------------------------


def test_inner_pullback_is_cohomologous_everywhere():
    grp = s3()
    coeff = conjugation_coefficients(subgroup_generated(grp, [3]), identity_hom(grp))
    for a in enumerate_cocycles(coeff):
        for g in grp.elements:
            b = inner_pullback(a, g)  # validates the explicit coboundary inside
            assert cohomologous(a, b) is not None


def test_inner_pullback_trivial_for_central_elements():
    a = enumerate_cocycles(INVERSION_ON_C3)[1]
    assert inner_pullback(a, 0).values == a.values
    # gamma abelian: conjugation only twists through the action
    b = inner_pullback(a, 1)
    assert cohomologous(a, b) is not None


# --- restriction, pullback, descent ------------------------------------------


def test_restrict_class_through_inclusion():
    grp = s3()
    sign = enumerate_homs(grp, C2)[1]
    coeff = constant_coefficients(C2, C3)
    a = Cocycle(coeff, (0, 0))
    pulled = restrict_class(sign, a)
    assert pulled.parent.gamma == grp
    assert pulled.values == (0,) * 6


def test_pullback_class_requires_action_through_projection():
    # nonabelian kernel acting on itself by conjugation does not factor
    grp = s3()
    ext_mid = direct_product(grp, C2, label="S3xC2")
    iota = GroupHom(grp, ext_mid, tuple(2 * g for g in grp.elements))
    pi = GroupHom(ext_mid, C2, tuple(e % 2 for e in range(12)))
    ext = make_extension(iota, pi)
    coeff = conjugation_coefficients(image(ext.iota), identity_hom(ext.E))
    a = trivial_cocycle(coeff)
    section = GroupHom(C2, ext_mid, (0, 1))
    with pytest.raises(ActionMismatch):
        pullback_class(section, a, ext)
    # without the extension the pullback itself is still legal
    assert pullback_class(section, a).values == (0, 0)


def test_descend_class_and_kernel_obstruction():
    proj = GroupHom(C4, C2, (0, 1, 0, 1))
    coeff4 = constant_coefficients(C4, C2)
    descends = Cocycle(coeff4, (0, 1, 0, 1))
    down = descend_class(proj, descends)
    assert down.parent.gamma == C2
    assert down.values == (0, 1)
    stuck = Cocycle(constant_coefficients(C4, C4), tuple(C4.elements))
    with pytest.raises(NotTrivialOnKernel):
        descend_class(proj, stuck)


def test_descend_checks_explicit_kernel():
    proj = GroupHom(C4, C2, (0, 1, 0, 1))
    a = Cocycle(constant_coefficients(C4, C2), (0, 1, 0, 1))
    from seclab.groups import subgroup

    with pytest.raises(ValidationError):
        descend_class(proj, a, trivial_on=subgroup(C4, [0]))


# --- twisting ----------------------------------------------------------------


def test_twist_coefficients_sends_a_to_trivial_class():
    grp = s3()
    coeff = constant_coefficients(C2, grp)
    homs = enumerate_cocycles(coeff)
    a = next(c for c in homs if c.values != (0, 0))
    twisted, mapping = twist_coefficients(coeff, a)
    assert cohomologous(mapping[a], trivial_cocycle(twisted)) is not None
    # equivalence is preserved in both directions
    hs = h1(coeff)
    ht = h1(twisted)
    assert hs.class_count == ht.class_count
    for x in homs:
        for y in homs:
            same_before = cohomologous(x, y) is not None
            same_after = cohomologous(mapping[x], mapping[y]) is not None
            assert same_before == same_after


def test_twist_lift_recovers_all_sections():
    ext = s3_over_c2()
    report = enumerate_sections(ext)
    s0 = report.sections[0]
    coeff = conjugation_coefficients(image(ext.iota), s0)
    twisted = {twist_lift(s0, a).map for a in enumerate_cocycles(coeff)}
    assert twisted == {s.map for s in report.sections}


def test_twist_lift_needs_embedded_conjugation_action():
    ext = s3_over_c2()
    s0 = enumerate_sections(ext).sections[0]
    bare = constant_coefficients(C2, C3)
    with pytest.raises(NotACocycleForThisAction):
        twist_lift(s0, trivial_cocycle(bare))


# --- the lifting dictionary --------------------------------------------------


def test_lifts_frozen_counts():
    assert lifts_up_to_conjugacy(c4_over_c2(), identity_hom(C2)) == ()
    classes = lifts_up_to_conjugacy(s3_over_c2(), identity_hom(C2))
    assert len(classes) == 1
    assert len(classes[0]) == 3


def test_lifts_through_trivial_base_are_conjugacy_classes_of_homs():
    grp = s3()
    triv = cyclic_group(1)
    ext = make_extension(identity_hom(grp), GroupHom(grp, triv, (0,) * 6))
    classes = lifts_up_to_conjugacy(ext, GroupHom(C2, triv, (0, 0)))
    assert len(classes) == 2  # trivial map; the three transposition embeddings
    assert sorted(len(c) for c in classes) == [1, 3]


def test_lift_classes_match_cocycle_classes_on_more_bases():
    ext = s3_over_c2()
    for base in (C2, C4, direct_product(C2, C2)):
        for phibar in enumerate_homs(base, ext.Gamma):
            classes = lifts_up_to_conjugacy(ext, phibar)
            if classes:
                coeff = conjugation_coefficients(image(ext.iota), classes[0][0])
                assert len(classes) == h1(coeff).class_count


def test_pullback_coefficients_compose():
    grp = s3()
    sign = enumerate_homs(grp, C2)[1]
    pulled = pullback_coefficients(sign, INVERSION_ON_C3)
    assert pulled.gamma == grp
    assert pulled.action[1] == (0, 2, 1)  # transpositions invert
    assert pulled.action[3] == (0, 1, 2)  # rotations act trivially
