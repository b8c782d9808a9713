from fractions import Fraction

import pytest

from superfock.errors import InvalidAlgebra, InvalidIndexLattice
from superfock.scalars import ExactScalar
from superfock.superalgebra import (
    Element,
    N1_NS,
    N1_RAMOND,
    N2_MIRROR_TWISTED,
    N2_NS,
    N2_RAMOND,
    PRESENTATIONS,
    VIRASORO,
    bracket,
    corrupted_virasoro_quintic,
    gen,
    mirror_automorphism,
    mirror_map_on_generator,
    pair_bracket,
    rescaled_virasoro,
    verify_algebra,
    verify_automorphism,
)

HALF = Fraction(1, 2)


def test_virasoro_central_term():
    got = pair_bracket(VIRASORO, gen("L", 2), gen("L", -2))
    want = Element([(gen("L", 0), 4), (gen("C"), Fraction(1, 2))])
    assert got == want


def test_n1_gg_bracket():
    got = pair_bracket(N1_NS, gen("G", Fraction(3, 2)), gen("G", Fraction(-3, 2)))
    want = Element([(gen("L", 0), 2), (gen("C"), Fraction(2, 3))])
    assert got == want


def test_n2_j_g1_bracket():
    got = pair_bracket(N2_NS, gen("J", 1), gen("G1", HALF))
    want = Element([(gen("G2", Fraction(3, 2)), ExactScalar(0, -1))])
    assert got == want


def test_mirror_twisted_g1_g2_bracket():
    got = pair_bracket(N2_MIRROR_TWISTED, gen("G1", HALF), gen("G2", 0))
    want = Element([(gen("J", HALF), ExactScalar(0, Fraction(-1, 2)))])
    assert got == want


def test_lattice_validation():
    with pytest.raises(InvalidIndexLattice):
        pair_bracket(N2_NS, gen("G1", 1), gen("G1", HALF))
    with pytest.raises(InvalidIndexLattice):
        pair_bracket(N2_MIRROR_TWISTED, gen("J", 1), gen("J", HALF))
    with pytest.raises(InvalidAlgebra):
        pair_bracket(VIRASORO, gen("G", HALF), gen("L", 0))


def test_bracket_outputs_respect_lattices():
    for name, alg in PRESENTATIONS.items():
        for a in alg.basis(2):
            for b in alg.basis(2):
                for g, _ in pair_bracket(alg, a, b).sorted_terms():
                    assert alg.valid_index(g), (name, a, b, g)


@pytest.mark.parametrize("name", sorted(PRESENTATIONS))
def test_all_presentations_verify(name):
    report = verify_algebra(PRESENTATIONS[name], 3)
    assert report.passed, report.violations[:3]


def test_vacuous_window_passes():
    assert verify_algebra(VIRASORO, 0).passed


def test_quintic_cocycle_fails_jacobi():
    report = verify_algebra(corrupted_virasoro_quintic(), 3)
    assert not report.passed
    kinds = {v.kind for v in report.violations}
    assert kinds == {"jacobi"}
    # skew still holds: the corrupted term is an odd function of the index
    assert all(v.kind != "skew" for v in report.violations)


def test_rescaled_cocycle_is_still_a_lie_algebra():
    # (m**3 - m)/11 spans the same cocycle line: rescaling the central
    # element is an isomorphism, so no identity can fail.
    assert verify_algebra(rescaled_virasoro(11), 4).passed


def test_mirror_map_values():
    assert mirror_map_on_generator(gen("G2", HALF)) == Element.of(gen("G2", HALF), -1)
    assert mirror_map_on_generator(gen("G1", HALF)) == Element.of(gen("G1", HALF))
    assert mirror_map_on_generator(gen("J", 3)) == Element.of(gen("J", 3), -1)
    assert mirror_map_on_generator(gen("L", -2)) == Element.of(gen("L", -2))
    assert mirror_map_on_generator(gen("C")) == Element.of(gen("C"))


def test_mirror_map_is_involution():
    x = Element([(gen("G2", Fraction(3, 2)), 2), (gen("J", 1), ExactScalar(0, 1)),
                 (gen("L", 0), 1)])
    assert mirror_automorphism(mirror_automorphism(x)) == x


def test_mirror_map_intertwines_bracket():
    a = Element.of(gen("J", 1))
    b = Element.of(gen("G1", HALF))
    lhs = mirror_automorphism(bracket(N2_NS, a, b))
    rhs = bracket(N2_NS, mirror_automorphism(a), mirror_automorphism(b))
    assert lhs == rhs == Element([(gen("G2", Fraction(3, 2)), ExactScalar(0, 1))])


def test_mirror_map_rejects_foreign_symbols():
    with pytest.raises(InvalidAlgebra):
        mirror_automorphism(Element.of(gen("G", HALF)))


def test_verify_automorphism():
    assert verify_automorphism(N2_NS, mirror_map_on_generator, 3).passed
    assert verify_automorphism(N2_NS, lambda g: Element.of(g), 3).passed

    def g1_flip(g):
        e = Element.of(g)
        return e.scale(-1) if g.family == "G1" else e

    report = verify_automorphism(N2_NS, g1_flip, 2)
    assert not report.passed


def test_ramond_lattices_differ_from_ns():
    # the structural half-integer/integer asymmetry of the hybrid algebra
    assert N2_NS.lattices["J"] == 0 and N2_MIRROR_TWISTED.lattices["J"] == HALF
    assert N2_NS.lattices["G2"] == HALF and N2_MIRROR_TWISTED.lattices["G2"] == 0
    assert N1_RAMOND.lattices["G"] == 0 and N1_NS.lattices["G"] == HALF
    assert N2_RAMOND.lattices["G1"] == 0


def test_report_json_shape():
    rep = verify_algebra(VIRASORO, 1)
    js = rep.to_json()
    assert js["algebra"] == "virasoro" and js["pass"] is True
    assert js["violations"] == []
