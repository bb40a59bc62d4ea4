from fractions import Fraction

import pytest

from lutzkit.errors import ParseError
from lutzkit.exact_linalg import IntMatrix, SymmetricIntMatrix
from lutzkit.legendrian import UP, LegendrianKnot, LegendrianLink, single_knot
from lutzkit.surgery import (
    AMBIENT_ABSTRACT,
    AMBIENT_S1XS2,
    AMBIENT_S3,
    AbelianGroupPresentation,
    ContactSurgeryDiagram,
    D3UndefinedError,
    cancel_pushoff_pair,
    d2_obstruction_vanishes,
    d3_invariant,
    euler_class,
    format_diagram,
    full_lutz_link,
    h1_presentation,
    homotopy_report,
    lemma_slide_sequence,
    linking_matrix,
    parse_diagram,
    s1xs2_example_diagram,
    simple_lutz_link,
    topological_framing,
    verify_lemma,
)


def one_knot_diagram(tb, rot, coeff, ambient=AMBIENT_S3):
    link = single_knot("K", tb, rot)
    return ContactSurgeryDiagram(link, {"K": coeff}, ambient)


def expected_lutz_matrix(t):
    return SymmetricIntMatrix([
        [t + 1, t, t, t],
        [t, t - 1, t - 2, t - 2],
        [t, t - 2, t - 1, t - 2],
        [t, t - 2, t - 2, t - 3],
    ])


# ---------------------------------------------------------------------------
# Constructors


def test_full_lutz_link_tables():
    d = full_lutz_link(-1, 0)
    assert d.components == ("L1", "L2", "L3", "L4")
    assert [d.link.knot(k).tb for k in d.components] == [-1, -3, -3, -5]
    assert [d.link.knot(k).rot for k in d.components] == [0, -2, -2, -4]
    assert all(c == 1 for c in d.coefficients.values())
    assert d.ambient == AMBIENT_S3


def test_full_lutz_link_framings():
    d = full_lutz_link(3, 1)
    assert [topological_framing(d, k) for k in d.components] == [4, 2, 2, 0]
    assert [d.link.knot(k).tb for k in d.components] == [3, 1, 1, -1]


def test_simple_lutz_link_is_a_prefix_of_the_full_link():
    for t, r in [(-1, 0), (4, -2), (0, 0)]:
        simple = simple_lutz_link(t, r)
        full = full_lutz_link(t, r)
        assert simple.components == ("L1", "L2")
        for k in simple.components:
            a, b = simple.link.knot(k), full.link.knot(k)
            assert (a.tb, a.rot) == (b.tb, b.rot)
        assert simple.link.lk("L1", "L2") == full.link.lk("L1", "L2") == t
        assert simple.coefficients == {"L1": 1, "L2": 1}


def test_s1xs2_example_shape():
    d = s1xs2_example_diagram()
    assert d.components == ("L0", "L1", "L2", "L3", "L4")
    assert [d.link.knot(k).tb for k in d.components] == [-1, -1, -3, -3, -5]
    assert d.anchor == "L0"
    assert linking_matrix(d) == SymmetricIntMatrix([
        [0, -1, -1, -1, -1],
        [-1, 0, -1, -1, -1],
        [-1, -1, -2, -3, -3],
        [-1, -1, -3, -2, -3],
        [-1, -1, -3, -3, -4],
    ])


def test_diagram_validation():
    link = single_knot("K", 0, 0)
    with pytest.raises(ValueError):
        ContactSurgeryDiagram(link, {"K": 2}, AMBIENT_S3)
    with pytest.raises(ValueError):
        ContactSurgeryDiagram(link, {}, AMBIENT_S3)
    with pytest.raises(ValueError):
        ContactSurgeryDiagram(link, {"K": 1}, "lens-space")
    with pytest.raises(ValueError):
        ContactSurgeryDiagram(link, {"K": 1}, AMBIENT_S1XS2)  # tb != -1


# ---------------------------------------------------------------------------
# Linking matrix


def test_linking_matrix_formula_sweep():
    for t in range(-10, 11):
        assert linking_matrix(full_lutz_link(t, 0)) == expected_lutz_matrix(t)


def test_linking_matrix_at_minus_one():
    assert linking_matrix(full_lutz_link(-1, 0)) == SymmetricIntMatrix([
        [0, -1, -1, -1],
        [-1, -2, -3, -3],
        [-1, -3, -2, -3],
        [-1, -3, -3, -4],
    ])


def test_empty_diagram_matrix():
    empty = ContactSurgeryDiagram(LegendrianLink((), {}), {}, AMBIENT_S3)
    m = linking_matrix(empty)
    assert (m.rows, m.cols) == (0, 0)


# ---------------------------------------------------------------------------
# Homology and meridians


def test_h1_of_s1xs2_example():
    h1 = h1_presentation(s1xs2_example_diagram())
    assert h1.free_rank == 1
    assert h1.torsion == ()
    mu = h1.meridian_images
    assert all(len(img) == 1 for img in mu)
    g = mu[0][0]
    assert abs(g) == 1
    assert mu[1] == mu[4] == (g,)
    assert mu[2] == mu[3] == (-g,)


def test_h1_of_full_lutz_is_trivial():
    for t in range(-5, 6):
        h1 = h1_presentation(full_lutz_link(t, 0))
        assert h1.is_trivial


def test_h1_single_plus_one_unknot():
    h1 = h1_presentation(one_knot_diagram(-1, 0, 1))
    assert (h1.free_rank, h1.torsion) == (1, ())


def test_h1_lens_space_torsion():
    h1 = h1_presentation(one_knot_diagram(-4, 0, 1))  # tf = -3
    assert (h1.free_rank, h1.torsion) == (0, (3,))
    assert h1.describe() == "Z/3"


def test_presentation_validation_and_describe():
    with pytest.raises(ValueError):
        AbelianGroupPresentation(0, (3, 2), ())
    with pytest.raises(ValueError):
        AbelianGroupPresentation(0, (1,), ())
    assert AbelianGroupPresentation(2, (2, 4), ()).describe() == "Z^2 + Z/2 + Z/4"
    assert AbelianGroupPresentation(0, (), ()).describe() == "0"


# ---------------------------------------------------------------------------
# Euler class and d2


def test_euler_class_of_example_vanishes():
    element, vanishes = euler_class(s1xs2_example_diagram())
    assert vanishes
    assert all(x == 0 for x in element)


def test_euler_class_zero_rotations():
    d = full_lutz_link(2, 2)  # rot vector (2, 0, 0, -2)
    link = d.link
    zeroed = LegendrianLink(
        tuple(LegendrianKnot(k.id, k.tb, 0, k.parent, k.zigzags) for k in link.knots),
        dict(link.lk_table),
    )
    element, vanishes = euler_class(ContactSurgeryDiagram(zeroed, d.coefficients, d.ambient))
    assert vanishes


def test_euler_class_nonvanishing():
    element, vanishes = euler_class(one_knot_diagram(-1, 2, 1))
    assert not vanishes
    assert element in ((2,), (-2,))


def test_euler_skip_validation():
    with pytest.raises(KeyError):
        euler_class(full_lutz_link(0, 0), skip={"L9"})


def test_d2_statuses():
    assert d2_obstruction_vanishes(s1xs2_example_diagram()) == "vanishes"
    # H1 = Z/2 with vanishing Euler class: doubling is not injective
    assert d2_obstruction_vanishes(one_knot_diagram(-3, 0, 1)) == "indeterminate"
    # nonvanishing Euler class
    assert d2_obstruction_vanishes(one_knot_diagram(-1, 2, 1)) == "indeterminate"


# ---------------------------------------------------------------------------
# d3


def test_d3_of_full_lutz_link():
    assert d3_invariant(full_lutz_link(-1, 0)) == Fraction(-1, 2)


def test_d3_sweep_small():
    for t in range(-3, 4):
        for r in range(-3, 4):
            assert d3_invariant(full_lutz_link(t, r)) == Fraction(-1, 2)


def test_d3_regression_minus_one_surgery():
    # smooth -3-surgery on an unknot-like component: chi=2, q=0,
    # sigma=-1, c^2 = -1/3, total -1/3
    assert d3_invariant(one_knot_diagram(-2, 1, -1)) == Fraction(-1, 3)


def test_d3_of_empty_diagram_is_minus_half():
    empty = ContactSurgeryDiagram(LegendrianLink((), {}), {}, AMBIENT_S3)
    assert d3_invariant(empty) == Fraction(-1, 2)


def test_d3_undefined_reasons():
    with pytest.raises(D3UndefinedError, match="3-sphere"):
        d3_invariant(s1xs2_example_diagram())
    with pytest.raises(D3UndefinedError, match="degenerate"):
        d3_invariant(one_knot_diagram(-1, 0, 1))  # tf = 0


def test_homotopy_report_bundles():
    rep = homotopy_report(s1xs2_example_diagram())
    assert rep.h1.describe() == "Z"
    assert rep.euler_vanishes
    assert rep.d2_status == "vanishes"
    assert rep.d3 is None and rep.d3_reason is not None

    rep2 = homotopy_report(full_lutz_link(2, 5))
    assert rep2.d3 == Fraction(-1, 2)
    assert rep2.d3_reason is None


# ---------------------------------------------------------------------------
# Cancellation


def test_cancel_full_lutz_to_empty():
    for t, r in [(-1, 0), (3, 2), (0, -5)]:
        out = cancel_pushoff_pair(full_lutz_link(t, r))
        assert out.components == ()


def test_cancel_simple_lutz_to_empty():
    assert cancel_pushoff_pair(simple_lutz_link(4, 4)).components == ()


def test_cancel_example_to_anchor():
    out = cancel_pushoff_pair(s1xs2_example_diagram())
    assert out.components == ("L0",)
    assert out.ambient == AMBIENT_S1XS2


def test_cancel_is_noop_without_provenance():
    # a parsed diagram carries no derivation history
    d = parse_diagram(format_diagram(full_lutz_link(-1, 0)))
    assert cancel_pushoff_pair(d).components == ("L1", "L2", "L3", "L4")


def test_cancel_keeps_h1_with_spectator_component():
    knots = (
        LegendrianKnot("X", -4, 0),
        LegendrianKnot("P", -2, 0),
        LegendrianKnot("C", -4, -2, parent=("P", "push-off"), zigzags=(UP, UP)),
    )
    table = {("P", "X"): 3, ("C", "X"): 3, ("C", "P"): -2}
    d = ContactSurgeryDiagram(LegendrianLink(knots, table), {"X": 1, "P": 1, "C": 1})
    before = h1_presentation(d)
    out = cancel_pushoff_pair(d)
    assert out.components == ("X",)
    assert h1_presentation(out).isomorphic(before)
    assert before.torsion == (3,)


def test_cancel_overlapping_chain_removes_innermost_pair():
    link = single_knot("A", -1, 0)
    from lutzkit.legendrian import push_off, stabilize

    link, b = push_off(link, "A", "B")
    link = stabilize(stabilize(link, b, UP), b, UP)
    link, c = push_off(link, b, "C")
    link = stabilize(stabilize(link, c, UP), c, UP)
    d = ContactSurgeryDiagram(link, {k: 1 for k in link.ids}, AMBIENT_S3)
    out = cancel_pushoff_pair(d)
    # (A, B) is entangled with C at first, so (B, C) goes; A then has no
    # child left and survives
    assert out.components == ("A",)


# ---------------------------------------------------------------------------
# Identity battery


def test_verify_lemma_all_pass():
    report = verify_lemma(range(-4, 5), range(-4, 5))
    assert report.passed
    names = [c.name for c in report.checks]
    assert "lemma.c2 == -8" in names
    assert "lemma.sigma == 0" in names
    assert "lemma.charpoly" in names


def test_verify_lemma_check_lines_format():
    report = verify_lemma(range(0, 1), range(0, 1))
    for line in report.lines():
        assert line.startswith("CHECK ")
        assert " expected=" in line and " got=" in line
        assert (" PASS " in line) or (" FAIL " in line)


def test_slide_sequence_produces_small_matrix():
    a = lemma_slide_sequence(linking_matrix(full_lutz_link(0, 0)))
    assert a == SymmetricIntMatrix([
        [1, -1, -1, 0],
        [-1, 0, -1, 0],
        [-1, -1, 0, -1],
        [0, 0, -1, 0],
    ])


# ---------------------------------------------------------------------------
# Text format


def test_diagram_roundtrip():
    d = full_lutz_link(2, -3)
    again = parse_diagram(format_diagram(d))
    assert again.components == d.components
    assert again.ambient == d.ambient
    assert again.coefficients == d.coefficients
    assert linking_matrix(again) == linking_matrix(d)


def test_diagram_roundtrip_s1xs2():
    d = s1xs2_example_diagram()
    again = parse_diagram(format_diagram(d))
    assert again.anchor == "L0"
    assert linking_matrix(again) == linking_matrix(d)


def test_parse_diagram_errors():
    with pytest.raises(ParseError):
        parse_diagram("K -1 0\ncoeff K +1\n")  # missing ambient
    with pytest.raises(ParseError):
        parse_diagram("ambient s3\nK -1 0\ncoeff K +2\n")
    with pytest.raises(ParseError):
        parse_diagram("ambient s3\nK -1 0\n")  # missing coeff
    with pytest.raises(ParseError):
        parse_diagram("ambient s3\nambient s3\nK -1 0\ncoeff K +1\n")
    with pytest.raises(ParseError):
        parse_diagram("ambient s1xs2\nK 0 0\ncoeff K +1\n")  # bad anchor
    with pytest.raises(ParseError):
        parse_diagram("ambient s3\nA 0 0\nB 0 0\ncoeff A +1\ncoeff B +1\n")  # missing lk
