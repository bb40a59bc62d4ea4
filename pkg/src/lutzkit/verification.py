"""
The end-to-end verification battery behind `verify-paper`.

Every identity the construction is supposed to satisfy is checked here
exactly, most of them quantified over integer sweeps: the invariant
tables of the 4-component twist link, the handle-slide reduction and its
characteristic polynomial, the signature and c^2 identities, the d3
sweep, homology and Euler-class facts of the 5-component example, the
cancellation reductions, and the open book accounting including the
thickened-torus relative piece.  The result is an ordered line-oriented
report; the CLI turns it into CHECK lines and an exit status.
"""

from __future__ import annotations

from fractions import Fraction

from .openbook import (
    LEFT,
    OpenBook,
    RIGHT,
    full_lutz_on_binding,
    t2xI_relative_piece,
)
from .reporting import VerificationReport
from .surgery import (
    cancel_pushoff_pair,
    d2_obstruction_vanishes,
    d3_invariant,
    euler_class,
    full_lutz_link,
    h1_presentation,
    linking_matrix,
    s1xs2_example_diagram,
    simple_lutz_link,
    topological_framing,
    verify_lemma,
)

TABLE_RANGE = range(-10, 11)
D3_RANGE = range(-6, 7)


def _check_tables(report: VerificationReport) -> None:
    tb_bad: list[str] = []
    rot_bad: list[str] = []
    tf_bad: list[str] = []
    lk_bad: list[str] = []
    matrix_bad: list[str] = []
    for t in TABLE_RANGE:
        for r in TABLE_RANGE:
            d = full_lutz_link(t, r)
            ids = d.components
            tb = tuple(d.link.knot(k).tb for k in ids)
            if tb != (t, t - 2, t - 2, t - 4):
                tb_bad.append(f"t={t},r={r}:{tb}")
            rot = tuple(d.link.knot(k).rot for k in ids)
            if rot != (r, r - 2, r - 2, r - 4):
                rot_bad.append(f"t={t},r={r}:{rot}")
            tf = tuple(topological_framing(d, k) for k in ids)
            if tf != (t + 1, t - 1, t - 1, t - 3):
                tf_bad.append(f"t={t},r={r}:{tf}")
            lk = d.link.lk
            row1 = (lk("L1", "L2"), lk("L1", "L3"), lk("L1", "L4"))
            rest = (lk("L2", "L3"), lk("L2", "L4"), lk("L3", "L4"))
            if row1 != (t, t, t) or rest != (t - 2, t - 2, t - 2):
                lk_bad.append(f"t={t},r={r}:{row1}+{rest}")
        m = linking_matrix(full_lutz_link(t, 0))
        expected = (
            (t + 1, t, t, t),
            (t, t - 1, t - 2, t - 2),
            (t, t - 2, t - 1, t - 2),
            (t, t - 2, t - 2, t - 3),
        )
        if m.entries != expected:
            matrix_bad.append(f"t={t}:{m.entries}")
    report.add_sweep("tables.tb", "(t, t-2, t-2, t-4)", tb_bad)
    report.add_sweep("tables.rot", "(r, r-2, r-2, r-4)", rot_bad)
    report.add_sweep("tables.tf", "(t+1, t-1, t-1, t-3)", tf_bad)
    report.add_sweep("tables.lk", "lk(L1,.)=t, others t-2", lk_bad)
    report.add_sweep("tables.linking-matrix", "M(t)", matrix_bad)


def _check_d3(report: VerificationReport) -> None:
    bad: list[str] = []
    for t in D3_RANGE:
        for r in D3_RANGE:
            value = d3_invariant(full_lutz_link(t, r))
            if value != Fraction(-1, 2):
                bad.append(f"t={t},r={r}:{value}")
    report.add_sweep("d3.full_lutz == -1/2", "-1/2", bad)

    d = full_lutz_link(-1, 0)
    m = linking_matrix(d)
    from .exact_linalg import signature_symmetric, solve_rational

    rot_vec = [d.link.knot(k).rot for k in d.components]
    x = solve_rational(m, rot_vec)
    c2 = sum(Fraction(ri) * xi for ri, xi in zip(rot_vec, x))
    inputs = (f"c2={c2} sigma={signature_symmetric(m)} "
              f"chi={1 + len(d.components)} q={sum(1 for c in d.coefficients.values() if c == 1)}")
    report.add("d3.inputs(t=-1,r=0)", "c2=-8 sigma=0 chi=5 q=4", inputs)


def _check_homology(report: VerificationReport) -> None:
    h1_bad: list[str] = []
    for t in TABLE_RANGE:
        h1 = h1_presentation(full_lutz_link(t, 0))
        if not h1.is_trivial:
            h1_bad.append(f"t={t}:{h1.describe()}")
    report.add_sweep("h1.full_lutz == 0", "0", h1_bad)

    example = s1xs2_example_diagram()
    h1 = h1_presentation(example)
    report.add("h1.example == Z", "Z", h1.describe())

    mu = h1.meridian_images
    pattern_ok = (
        len(mu) == 5
        and all(len(img) == 1 for img in mu)
        and abs(mu[0][0]) == 1
        and mu[0] == mu[1] == mu[4]
        and mu[2] == mu[3] == (-mu[0][0],)
    )
    report.add_outcome(
        "h1.example.mu-relations",
        pattern_ok,
        "mu0=mu1=mu4=-mu2=-mu3 (generators)",
        "holds" if pattern_ok else f"images={mu}",
    )

    element, vanishes = euler_class(example)
    report.add_outcome("euler.example == 0", vanishes, "0",
                       "0" if vanishes else str(element))
    report.add("d2.example", "vanishes", d2_obstruction_vanishes(example))


def _check_cancellation(report: VerificationReport) -> None:
    full_bad: list[str] = []
    for t, r in [(-1, 0), (0, 0), (5, -3), (-7, 7)]:
        left = cancel_pushoff_pair(full_lutz_link(t, r)).components
        if left != ():
            full_bad.append(f"t={t},r={r}:{left}")
    report.add_sweep("cancel.full_lutz -> empty", "()", full_bad)

    simple_left = cancel_pushoff_pair(simple_lutz_link(2, 2)).components
    report.add("cancel.simple -> empty", "()", str(simple_left))

    example_left = cancel_pushoff_pair(s1xs2_example_diagram()).components
    report.add("cancel.example -> anchor", "('L0',)", str(example_left))


def _check_openbook(report: VerificationReport) -> None:
    genus_bad: list[str] = []
    boundary_bad: list[str] = []
    lefts_bad: list[str] = []
    for g in range(4):
        for b in range(1, 5):
            bindings = tuple(f"B{i}" for i in range(b))
            for k in bindings:
                out, trace = full_lutz_on_binding(OpenBook(g, bindings), k)
                tag = f"g={g},b={b},k={k}"
                if out.genus != g or trace.genus_after != trace.genus_before:
                    genus_bad.append(f"{tag}:genus={out.genus}")
                expected_added = 5 if b == 1 else 4
                if trace.boundaries_added != expected_added:
                    boundary_bad.append(f"{tag}:added={trace.boundaries_added}")
                lefts = sum(1 for _, sign in out.monodromy if sign == LEFT)
                if lefts != 4:
                    lefts_bad.append(f"{tag}:lefts={lefts}")
    report.add_sweep("openbook.genus-preserved", "genus unchanged", genus_bad)
    report.add_sweep("openbook.boundaries-added", "4 (5 when b=1)", boundary_bad)
    report.add_sweep("openbook.left-twists == 4", "4", lefts_bad)

    rel = t2xI_relative_piece()
    report.add("t2xi.page", "genus 0, 6 circles",
               f"genus {rel.page.genus}, {rel.page.boundary_count} circles")
    report.add("t2xi.manifold-boundary == 2", 2, len(rel.manifold_boundary))
    word = rel.page.monodromy
    shape = (f"{sum(1 for _, s in word if s == RIGHT)} right + "
             f"{sum(1 for _, s in word if s == LEFT)} left")
    report.add("t2xi.word", "4 right + 4 left", shape)


def run_battery() -> VerificationReport:
    """Run every check in declaration order and return the full report."""
    report = VerificationReport()
    _check_tables(report)
    report.extend(verify_lemma(TABLE_RANGE, TABLE_RANGE))
    _check_d3(report)
    _check_homology(report)
    _check_cancellation(report)
    _check_openbook(report)
    return report
