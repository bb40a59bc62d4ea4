import random

import pytest

from lutzkit.errors import ParseError
from lutzkit.legendrian import (
    DOWN,
    UP,
    LegendrianKnot,
    LegendrianLink,
    format_link,
    parse_link,
    push_off,
    single_knot,
    stabilize,
    transverse_pushoff_self_linking,
)


def full_chain(t, r):
    link = single_knot("L1", t, r)
    link, _ = push_off(link, "L1", "L2")
    link = stabilize(stabilize(link, "L2", UP), "L2", UP)
    link, _ = push_off(link, "L2", "L3")
    link, _ = push_off(link, "L3", "L4")
    link = stabilize(stabilize(link, "L4", UP), "L4", UP)
    return link


def test_knot_validation():
    with pytest.raises(ValueError):
        LegendrianKnot("K", 0, 0, zigzags=("sideways",))
    with pytest.raises(ValueError):
        LegendrianKnot("K", 0, 0, parent=("K", "push-off"))
    with pytest.raises(ValueError):
        LegendrianKnot("K", 0, 0, parent=("J", "mirror"))
    with pytest.raises(ValueError):
        LegendrianKnot("", 0, 0)


def test_push_off_copies_invariants_and_links_tb_times():
    link = single_knot("K", -1, 0)
    link, child = push_off(link, "K")
    c = link.knot(child)
    assert (c.tb, c.rot) == (-1, 0)
    assert c.parent == ("K", "push-off")
    assert link.lk("K", child) == -1


def test_push_off_inherits_linking_row():
    link = single_knot("A", 3, 1)
    link, b = push_off(link, "A")
    link, c = push_off(link, b)
    # grandchild links the grandparent exactly as its parent did
    assert link.lk(c, "A") == link.lk(b, "A") == 3
    assert link.lk(b, c) == link.knot(b).tb


def test_push_off_unknown_id():
    with pytest.raises(KeyError):
        push_off(single_knot("K", 0, 0), "missing")


def test_push_off_rejects_taken_id():
    link = single_knot("K", 0, 0)
    with pytest.raises(ValueError):
        push_off(link, "K", new_id="K")


def test_stabilize_rules():
    link = single_knot("K", 5, 2)
    up = stabilize(link, "K", UP).knot("K")
    assert (up.tb, up.rot) == (4, 1)
    down = stabilize(link, "K", DOWN).knot("K")
    assert (down.tb, down.rot) == (4, 3)
    both = stabilize(stabilize(link, "K", UP), "K", DOWN).knot("K")
    assert (both.tb, both.rot) == (3, 2)
    assert both.zigzags == (UP, DOWN)


def test_stabilize_leaves_linking_alone():
    link = single_knot("A", -1, 0)
    link, b = push_off(link, "A")
    stabbed = stabilize(link, b, UP)
    assert stabbed.lk("A", b) == link.lk("A", b)


def test_stabilize_direction_validation():
    with pytest.raises(ValueError):
        stabilize(single_knot("K", 0, 0), "K", "left")


def test_self_linking_formula():
    assert transverse_pushoff_self_linking(LegendrianKnot("K", -1, 0)) == -1
    assert transverse_pushoff_self_linking(LegendrianKnot("K", -5, -4)) == -1


def test_self_linking_invariant_under_up_zigzag():
    rng = random.Random(117)
    for _ in range(20):
        t, r = rng.randint(-8, 8), rng.randint(-8, 8)
        link = single_knot("K", t, r)
        before = transverse_pushoff_self_linking(link.knot("K"))
        after = transverse_pushoff_self_linking(stabilize(link, "K", UP).knot("K"))
        assert before == after == t - r


def test_sum_invariant_under_down_zigzag():
    link = single_knot("K", 4, -3)
    k = stabilize(link, "K", DOWN).knot("K")
    assert k.tb + k.rot == 4 + (-3)


def test_full_chain_tables():
    rng = random.Random(7)
    for _ in range(15):
        t, r = rng.randint(-10, 10), rng.randint(-10, 10)
        link = full_chain(t, r)
        assert [link.knot(k).tb for k in ("L1", "L2", "L3", "L4")] == [t, t - 2, t - 2, t - 4]
        assert [link.knot(k).rot for k in ("L1", "L2", "L3", "L4")] == [r, r - 2, r - 2, r - 4]
        assert link.lk("L1", "L2") == link.lk("L1", "L3") == link.lk("L1", "L4") == t
        assert link.lk("L2", "L3") == link.lk("L2", "L4") == link.lk("L3", "L4") == t - 2


def test_link_table_validation():
    a = LegendrianKnot("A", 0, 0)
    b = LegendrianKnot("B", 0, 0)
    with pytest.raises(ValueError):
        LegendrianLink((a, b), {})  # missing pair
    with pytest.raises(ValueError):
        LegendrianLink((a, b), {("A", "B"): 0, ("A", "C"): 1})
    with pytest.raises(ValueError):
        LegendrianLink((a, a), {})


def test_generated_ids_are_fresh():
    link = single_knot("K", -1, 0)
    link, c1 = push_off(link, "K")
    link, c2 = push_off(link, "K")
    assert c1 != c2
    assert len(set(link.ids)) == 3


def test_link_roundtrip():
    link = full_chain(2, -1)
    again = parse_link(format_link(link))
    assert again.ids == link.ids
    for k in link.ids:
        assert (again.knot(k).tb, again.knot(k).rot) == (link.knot(k).tb, link.knot(k).rot)
    for i, a in enumerate(link.ids):
        for b in link.ids[i + 1:]:
            assert again.lk(a, b) == link.lk(a, b)


def test_parse_link_errors():
    with pytest.raises(ParseError):
        parse_link("A 0 0\nB 0 0\n")  # no lk line
    with pytest.raises(ParseError):
        parse_link("A 0 0\nB 0 0\nlk A B 1\nlk A B 1\n")
    with pytest.raises(ParseError):
        parse_link("A 0 x\n")
    with pytest.raises(ParseError):
        parse_link("A 0 0\nlk A A 1\n")
