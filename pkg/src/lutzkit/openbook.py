"""
Abstract open books and the binding-local full-twist rewrite.

A page is recorded as (genus, ordered boundary circles); curves on it are
symbolic descriptors (boundary-parallel, encircling a set of punctures,
or a parallel copy) rather than embedded arcs, and the monodromy is a
signed Dehn-twist word over the curve table.  Homology classes of curves
are evaluated on demand against the current page in the basis
(a1, b1, ..., ag, bg, d1, ..., d_{b-1}), where d_i is the class of the
i-th boundary circle and the last circle carries minus the sum.

The rewrite itself: realize a push-off of a binding component on the page
(stabilizing once if the binding is the whole boundary), push it off
twice more over freshly glued handles, and compose with one left-handed
twist along each of the four resulting curves.  The page never gains
genus, only punctures.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError

RIGHT = "right"
LEFT = "left"

BOUNDARY_PARALLEL = "boundary-parallel"
ENCIRCLES = "encircles"
PARALLEL_COPY = "parallel-copy"


@dataclass(frozen=True)
class CurveDescriptor:
    """A curve on the page, described by where it sits.

    locus is one of
      ("boundary-parallel", binding)
      ("encircles", binding, (punctures...))
      ("parallel-copy", source curve)
    """

    id: str
    locus: tuple

    def __post_init__(self) -> None:
        tag = self.locus[0]
        if tag == BOUNDARY_PARALLEL:
            if len(self.locus) != 2:
                raise ValueError(f"bad boundary-parallel locus: {self.locus}")
        elif tag == ENCIRCLES:
            if len(self.locus) != 3 or not isinstance(self.locus[2], tuple):
                raise ValueError(f"bad encircles locus: {self.locus}")
        elif tag == PARALLEL_COPY:
            if len(self.locus) != 2:
                raise ValueError(f"bad parallel-copy locus: {self.locus}")
        else:
            raise ValueError(f"unknown locus tag {tag!r}")


@dataclass(frozen=True)
class OpenBook:
    """Page (genus, bindings), curve table, and signed monodromy word."""

    genus: int
    bindings: tuple[str, ...]
    curves: tuple[CurveDescriptor, ...] = ()
    monodromy: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")
        if not self.bindings:
            raise ValueError("an open book needs at least one binding circle")
        if len(set(self.bindings)) != len(self.bindings):
            raise ValueError("duplicate binding ids")
        seen: set[str] = set()
        for c in self.curves:
            if c.id in seen:
                raise ValueError(f"duplicate curve id {c.id!r}")
            tag = c.locus[0]
            if tag in (BOUNDARY_PARALLEL, ENCIRCLES):
                refs = [c.locus[1], *(c.locus[2] if tag == ENCIRCLES else ())]
                for b in refs:
                    if b not in self.bindings:
                        raise ValueError(f"curve {c.id!r} references unknown circle {b!r}")
            else:
                # parallel copies must point backwards in the table
                if c.locus[1] not in seen:
                    raise ValueError(f"curve {c.id!r} copies undeclared curve {c.locus[1]!r}")
            seen.add(c.id)
        for cid, sign in self.monodromy:
            if cid not in seen:
                raise ValueError(f"monodromy references unknown curve {cid!r}")
            if sign not in (RIGHT, LEFT):
                raise ValueError(f"bad twist sign {sign!r}")

    @property
    def boundary_count(self) -> int:
        return len(self.bindings)

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - len(self.bindings)

    @property
    def h1_rank(self) -> int:
        return 2 * self.genus + len(self.bindings) - 1

    def curve(self, cid: str) -> CurveDescriptor:
        for c in self.curves:
            if c.id == cid:
                return c
        raise KeyError(f"no curve {cid!r}")

    def boundary_class(self, k: str) -> tuple[int, ...]:
        idx = self.bindings.index(k) if k in self.bindings else -1
        if idx < 0:
            raise KeyError(f"no binding {k!r}")
        n = self.h1_rank
        off = 2 * self.genus
        vec = [0] * n
        if idx < len(self.bindings) - 1:
            vec[off + idx] = 1
        else:
            for j in range(off, n):
                vec[j] = -1
        return tuple(vec)

    def curve_class(self, cid: str) -> tuple[int, ...]:
        c = self.curve(cid)
        tag = c.locus[0]
        if tag == PARALLEL_COPY:
            return self.curve_class(c.locus[1])
        vec = list(self.boundary_class(c.locus[1]))
        if tag == ENCIRCLES:
            for p in c.locus[2]:
                for i, x in enumerate(self.boundary_class(p)):
                    vec[i] += x
        return tuple(vec)


@dataclass(frozen=True)
class RelativeOpenBook:
    """An open-book-shaped page whose boundary circles are split into
    binding circles and circles lying on the manifold boundary."""

    page: OpenBook
    manifold_boundary: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.manifold_boundary:
            raise ValueError("a relative piece needs a manifold-boundary circle")
        for b in self.manifold_boundary:
            if b not in self.page.bindings:
                raise ValueError(f"unknown circle {b!r} in manifold boundary")

    @property
    def binding_circles(self) -> tuple[str, ...]:
        return tuple(b for b in self.page.bindings if b not in self.manifold_boundary)

    @property
    def is_planar(self) -> bool:
        return self.page.genus == 0


@dataclass(frozen=True)
class LutzTrace:
    """What the rewrite did: curve ids, puncture count, genus accounting."""

    lutz_curves: tuple[str, str, str, str]
    stabilization_curves: tuple[str, ...]
    boundaries_added: int
    genus_before: int
    genus_after: int

    def __post_init__(self) -> None:
        if self.genus_after != self.genus_before:
            raise ValueError("the rewrite must not change the page genus")


def _fresh(taken, prefix: str, start: int = 0) -> str:
    n = start
    while f"{prefix}{n}" in taken:
        n += 1
    return f"{prefix}{n}"


def _fresh_curve(ob: OpenBook, prefix: str, start: int = 0) -> str:
    return _fresh({c.id for c in ob.curves}, prefix, start)


def stabilize_at_binding(ob: OpenBook, k: str) -> tuple[OpenBook, str, str]:
    """Glue a handle at binding k: one new boundary circle and one right
    twist along a curve parallel to it.  chi drops by exactly 1."""
    if k not in ob.bindings:
        raise KeyError(f"no binding {k!r}")
    new_b = _fresh(set(ob.bindings), "B")
    cid = _fresh_curve(ob, "S")
    curve = CurveDescriptor(cid, (BOUNDARY_PARALLEL, new_b))
    out = OpenBook(
        genus=ob.genus,
        bindings=ob.bindings + (new_b,),
        curves=ob.curves + (curve,),
        monodromy=ob.monodromy + ((cid, RIGHT),),
    )
    return out, new_b, cid


def realize_binding_pushoff(ob: OpenBook, k: str) -> tuple[OpenBook, str, bool]:
    """Put a push-off of binding k onto the page as a homologically
    essential curve, stabilizing first when k is nullhomologous on the
    page (exactly the one-binding case)."""
    if k not in ob.bindings:
        raise KeyError(f"no binding {k!r}")
    stabilized = all(x == 0 for x in ob.boundary_class(k))
    if stabilized:
        ob, _, _ = stabilize_at_binding(ob, k)
    cid = _fresh_curve(ob, "L", start=1)
    curve = CurveDescriptor(cid, (BOUNDARY_PARALLEL, k))
    out = OpenBook(ob.genus, ob.bindings, ob.curves + (curve,), ob.monodromy)
    return out, cid, stabilized


def _resolve_surrounded(ob: OpenBook, cid: str) -> tuple[str, tuple[str, ...]]:
    c = ob.curve(cid)
    while c.locus[0] == PARALLEL_COPY:
        c = ob.curve(c.locus[1])
    if c.locus[0] == BOUNDARY_PARALLEL:
        return c.locus[1], ()
    return c.locus[1], c.locus[2]


def pushoff_with_two_zigzags(ob: OpenBook, cid: str, k: str) -> tuple[OpenBook, str]:
    """Push the curve off over two freshly glued handles at binding k.

    Two stabilizations happen first (two new circles, two right twists);
    the new curve encircles everything the old one did plus the two new
    punctures, so its class gains d_p1 + d_p2.
    """
    ob.curve(cid)
    if k not in ob.bindings:
        raise KeyError(f"no binding {k!r}")
    ob, p1, _ = stabilize_at_binding(ob, k)
    ob, p2, _ = stabilize_at_binding(ob, k)
    base, ps = _resolve_surrounded(ob, cid)
    new_id = _fresh_curve(ob, "L", start=1)
    curve = CurveDescriptor(new_id, (ENCIRCLES, base, ps + (p1, p2)))
    out = OpenBook(ob.genus, ob.bindings, ob.curves + (curve,), ob.monodromy)
    return out, new_id


def parallel_copy(ob: OpenBook, cid: str) -> tuple[OpenBook, str]:
    """Add an isotopic copy of a curve; the page itself is untouched."""
    ob.curve(cid)
    new_id = _fresh_curve(ob, "L", start=1)
    curve = CurveDescriptor(new_id, (PARALLEL_COPY, cid))
    out = OpenBook(ob.genus, ob.bindings, ob.curves + (curve,), ob.monodromy)
    return out, new_id


def full_lutz_on_binding(ob: OpenBook, k: str) -> tuple[OpenBook, LutzTrace]:
    """Rewrite the open book so it carries a full twist along binding k.

    Pipeline: realize a push-off of k on the page, push it off twice with
    two zigzags each (gluing two handles per step), take one parallel
    copy in between, then compose the monodromy with a left twist along
    each of the four curves.  Adds 4 punctures (5 if the initial
    stabilization fired) and never touches the genus.
    """
    before_genus = ob.genus
    before_b = ob.boundary_count
    before_curves = {c.id for c in ob.curves}

    ob, l1, stabilized = realize_binding_pushoff(ob, k)
    ob, l2 = pushoff_with_two_zigzags(ob, l1, k)
    ob, l3 = parallel_copy(ob, l2)
    ob, l4 = pushoff_with_two_zigzags(ob, l3, k)
    word = ob.monodromy + tuple((c, LEFT) for c in (l1, l2, l3, l4))
    out = OpenBook(ob.genus, ob.bindings, ob.curves, word)

    lutz = (l1, l2, l3, l4)
    stabs = tuple(c.id for c in out.curves
                  if c.id not in before_curves and c.id not in lutz)
    trace = LutzTrace(
        lutz_curves=lutz,
        stabilization_curves=stabs,
        boundaries_added=out.boundary_count - before_b,
        genus_before=before_genus,
        genus_after=out.genus,
    )
    return out, trace


def t2xI_relative_piece() -> RelativeOpenBook:
    """The thickened-torus layer the rewrite inserts, as a relative piece.

    Extracted as a delta: run the rewrite on the annulus model and keep
    only what it added.  The two model circles become the manifold
    boundary, the four glued circles become bindings, and the word is the
    four stabilization twists plus the four left twists.
    """
    core = CurveDescriptor("core", (BOUNDARY_PARALLEL, "B0"))
    model = OpenBook(0, ("B0", "B1"), (core,), (("core", RIGHT),))
    out, trace = full_lutz_on_binding(model, "B0")
    added = out.bindings[2:]
    new_curves = tuple(c for c in out.curves if c.id != "core")
    page = OpenBook(
        genus=0,
        bindings=model.bindings + added,
        curves=new_curves,
        monodromy=out.monodromy[len(model.monodromy):],
    )
    return RelativeOpenBook(page=page, manifold_boundary=model.bindings)


def word_reduce(ob: OpenBook) -> OpenBook:
    """Freely cancel adjacent opposite twists along the same curve."""
    stack: list[tuple[str, str]] = []
    for cid, sign in ob.monodromy:
        if stack and stack[-1][0] == cid and stack[-1][1] != sign:
            stack.pop()
        else:
            stack.append((cid, sign))
    return OpenBook(ob.genus, ob.bindings, ob.curves, tuple(stack))


# ---------------------------------------------------------------------------
# Text format.  Header "genus g boundaries b" fixes the circles as
# B0..B{b-1} positionally; curve lines carry the locus and the evaluated
# class vector; twist lines list the word in order.  Relative pieces add
# one "manifold-boundary ..." line after the header.


def _binding_rename(ob: OpenBook) -> dict[str, str]:
    return {b: f"B{i}" for i, b in enumerate(ob.bindings)}


def _format_curve(ob: OpenBook, c: CurveDescriptor, names: dict[str, str]) -> str:
    vec = ",".join(str(x) for x in ob.curve_class(c.id))
    tag = c.locus[0]
    if tag == BOUNDARY_PARALLEL:
        args = names[c.locus[1]]
    elif tag == ENCIRCLES:
        args = " ".join([names[c.locus[1]], *(names[p] for p in c.locus[2])])
    else:
        args = c.locus[1]
    return f"curve {c.id} {tag} {args} class={vec}"


def _format_page(ob: OpenBook, extra: list[str]) -> str:
    names = _binding_rename(ob)
    lines = [f"genus {ob.genus} boundaries {ob.boundary_count}", *extra]
    lines.extend(_format_curve(ob, c, names) for c in ob.curves)
    lines.extend(f"twist {cid} {sign}" for cid, sign in ob.monodromy)
    return "\n".join(lines) + "\n"


def format_openbook(ob: OpenBook) -> str:
    return _format_page(ob, [])


def format_relative_openbook(rel: RelativeOpenBook) -> str:
    names = _binding_rename(rel.page)
    tagged = " ".join(names[b] for b in rel.manifold_boundary)
    return _format_page(rel.page, [f"manifold-boundary {tagged}"])


def _parse_page(text: str, allow_relative: bool):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty open book text")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "genus" or head[2] != "boundaries":
        raise ParseError(f"bad header: {lines[0]!r}")
    try:
        genus, b = int(head[1]), int(head[3])
    except ValueError as exc:
        raise ParseError(f"bad header: {lines[0]!r}") from exc
    bindings = tuple(f"B{i}" for i in range(b))

    manifold_boundary: tuple[str, ...] | None = None
    curves: list[CurveDescriptor] = []
    declared: dict[str, list[int]] = {}
    word: list[tuple[str, str]] = []
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] == "manifold-boundary":
            if not allow_relative:
                raise ParseError("manifold-boundary line in a plain open book file")
            if manifold_boundary is not None:
                raise ParseError("duplicate manifold-boundary line")
            manifold_boundary = tuple(parts[1:])
        elif parts[0] == "curve":
            if len(parts) < 4 or not parts[-1].startswith("class="):
                raise ParseError(f"bad curve line: {ln!r}")
            cid, tag = parts[1], parts[2]
            args = parts[3:-1]
            if tag == BOUNDARY_PARALLEL:
                if len(args) != 1:
                    raise ParseError(f"bad curve line: {ln!r}")
                locus = (BOUNDARY_PARALLEL, args[0])
            elif tag == ENCIRCLES:
                if not args:
                    raise ParseError(f"bad curve line: {ln!r}")
                locus = (ENCIRCLES, args[0], tuple(args[1:]))
            elif tag == PARALLEL_COPY:
                if len(args) != 1:
                    raise ParseError(f"bad curve line: {ln!r}")
                locus = (PARALLEL_COPY, args[0])
            else:
                raise ParseError(f"unknown locus tag {tag!r}")
            body = parts[-1][len("class="):]
            try:
                declared[cid] = [int(x) for x in body.split(",")] if body else []
            except ValueError as exc:
                raise ParseError(f"bad class vector: {ln!r}") from exc
            curves.append(CurveDescriptor(cid, locus))
        elif parts[0] == "twist":
            if len(parts) != 3 or parts[2] not in (RIGHT, LEFT):
                raise ParseError(f"bad twist line: {ln!r}")
            word.append((parts[1], parts[2]))
        else:
            raise ParseError(f"unrecognized line: {ln!r}")

    try:
        ob = OpenBook(genus, bindings, tuple(curves), tuple(word))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    for cid, vec in declared.items():
        if list(ob.curve_class(cid)) != vec:
            raise ParseError(f"class vector of {cid!r} does not match its locus")
    return ob, manifold_boundary


def parse_openbook(text: str) -> OpenBook:
    ob, _ = _parse_page(text, allow_relative=False)
    return ob


def parse_relative_openbook(text: str) -> RelativeOpenBook:
    ob, mb = _parse_page(text, allow_relative=True)
    if mb is None:
        raise ParseError("missing manifold-boundary line")
    try:
        return RelativeOpenBook(ob, mb)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
