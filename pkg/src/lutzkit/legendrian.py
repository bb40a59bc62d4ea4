"""
Legendrian knots and links as invariant bookkeeping.

A knot here is just its classical invariants (tb, rot) together with a
record of how it was derived: an optional push-off parent and the zigzag
history of stabilizations applied since.  A link adds a complete
symmetric linking table.  No embedding data is stored; push-offs and
stabilizations act on the invariants by fixed local rules, which is all
the downstream surgery computations ever consume.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import ParseError

UP = "up"
DOWN = "down"
PUSH_OFF = "push-off"


@dataclass(frozen=True)
class LegendrianKnot:
    """Invariant carrier for one Legendrian knot.

    ``parent`` records a push-off derivation as (source id, "push-off");
    ``zigzags`` lists the stabilizations applied to this knot afterwards,
    in order.  Both exist so that surgery-level cancellation can recognize
    a push-off child with exactly two up-zigzags.
    """

    id: str
    tb: int
    rot: int
    parent: tuple[str, str] | None = None
    zigzags: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("knot id must be nonempty")
        if self.parent is not None:
            src, how = self.parent
            if how != PUSH_OFF:
                raise ValueError(f"unknown derivation {how!r}")
            if src == self.id:
                raise ValueError("knot cannot derive from itself")
        for z in self.zigzags:
            if z not in (UP, DOWN):
                raise ValueError(f"unknown zigzag direction {z!r}")


def _pair(a: str, b: str) -> tuple[str, str]:
    if a == b:
        raise ValueError(f"no self-linking entry for {a!r}")
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class LegendrianLink:
    """Ordered components plus a total symmetric linking table.

    The table must contain every unordered pair of component ids; there
    are no implicit zeros.
    """

    knots: tuple[LegendrianKnot, ...]
    lk_table: dict[tuple[str, str], int]

    def __post_init__(self) -> None:
        ids = [k.id for k in self.knots]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate knot ids")
        known = set(ids)
        want = {_pair(a, b) for i, a in enumerate(ids) for b in ids[i + 1:]}
        have = set(self.lk_table)
        for key in have:
            if key != _pair(*key):
                raise ValueError(f"linking key {key} not normalized")
            if not set(key) <= known:
                raise ValueError(f"linking entry for unknown ids {key}")
        missing = want - have
        if missing:
            raise ValueError(f"missing linking entries: {sorted(missing)}")
        extra = have - want
        if extra:
            raise ValueError(f"stray linking entries: {sorted(extra)}")

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(k.id for k in self.knots)

    def knot(self, k: str) -> LegendrianKnot:
        for knot in self.knots:
            if knot.id == k:
                return knot
        raise KeyError(f"no component {k!r}")

    def lk(self, a: str, b: str) -> int:
        return self.lk_table[_pair(a, b)]

    def __len__(self) -> int:
        return len(self.knots)


def single_knot(kid: str, tb: int, rot: int) -> LegendrianLink:
    return LegendrianLink((LegendrianKnot(kid, tb, rot),), {})


def _fresh_id(link: LegendrianLink, base: str) -> str:
    taken = set(link.ids)
    n = 1
    while f"{base}.{n}" in taken:
        n += 1
    return f"{base}.{n}"


def push_off(link: LegendrianLink, k: str, new_id: str | None = None) -> tuple[LegendrianLink, str]:
    """Add the Legendrian push-off of component k.

    The push-off copies (tb, rot), links its parent tb(k) times, and
    inherits the parent's linking number with every other component.
    """
    src = link.knot(k)
    kid = new_id if new_id is not None else _fresh_id(link, k)
    if kid in link.ids:
        raise ValueError(f"id {kid!r} already in use")
    child = LegendrianKnot(kid, src.tb, src.rot, parent=(k, PUSH_OFF))
    table = dict(link.lk_table)
    table[_pair(k, kid)] = src.tb
    for other in link.ids:
        if other != k:
            table[_pair(kid, other)] = link.lk(k, other)
    return LegendrianLink(link.knots + (child,), table), kid


def stabilize(link: LegendrianLink, k: str, direction: str) -> LegendrianLink:
    """Stabilize component k: tb drops by 1; rot drops (up) or rises (down).

    Stabilization is local, so the linking table is untouched.
    """
    if direction not in (UP, DOWN):
        raise ValueError(f"unknown zigzag direction {direction!r}")
    src = link.knot(k)
    shifted = replace(
        src,
        tb=src.tb - 1,
        rot=src.rot + (-1 if direction == UP else 1),
        zigzags=src.zigzags + (direction,),
    )
    knots = tuple(shifted if knot.id == k else knot for knot in link.knots)
    return LegendrianLink(knots, dict(link.lk_table))


def transverse_pushoff_self_linking(k: LegendrianKnot) -> int:
    """Self-linking number of the positive transverse push-off: tb - rot."""
    return k.tb - k.rot


# ---------------------------------------------------------------------------
# Link text format: knot lines "id tb rot", then "lk id1 id2 value" lines.
# Every unordered pair needs an explicit lk line.


def parse_link_lines(lines: list[str]) -> LegendrianLink:
    knots: list[LegendrianKnot] = []
    table: dict[tuple[str, str], int] = {}
    for ln in lines:
        parts = ln.split()
        if parts[0] == "lk":
            if len(parts) != 4:
                raise ParseError(f"bad lk line: {ln!r}")
            a, b = parts[1], parts[2]
            if a == b:
                raise ParseError(f"self-linking not allowed: {ln!r}")
            key = _pair(a, b)
            if key in table:
                raise ParseError(f"duplicate lk entry for {a} {b}")
            try:
                table[key] = int(parts[3])
            except ValueError as exc:
                raise ParseError(f"non-integer linking number: {ln!r}") from exc
        else:
            if len(parts) != 3:
                raise ParseError(f"bad knot line: {ln!r}")
            try:
                knots.append(LegendrianKnot(parts[0], int(parts[1]), int(parts[2])))
            except ValueError as exc:
                raise ParseError(f"bad knot line: {ln!r}") from exc
    try:
        return LegendrianLink(tuple(knots), table)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def parse_link(text: str) -> LegendrianLink:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    return parse_link_lines(lines)


def format_link(link: LegendrianLink) -> str:
    lines = [f"{k.id} {k.tb} {k.rot}" for k in link.knots]
    ids = link.ids
    for i, a in enumerate(ids):
        for b in ids[i + 1:]:
            lines.append(f"lk {a} {b} {link.lk(a, b)}")
    return "\n".join(lines) + ("\n" if lines else "")
