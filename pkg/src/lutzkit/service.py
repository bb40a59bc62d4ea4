"""Handlers behind the HTTP endpoints.

These are plain functions from request data to response models, with no
framework state, so the CLI can call them in-process and get exactly the
answers the service would give.  Input problems surface as ParseError or
ValueError; the HTTP layer maps those to 422, the CLI to exit code 2.
"""

from __future__ import annotations

from .exact_linalg import IntMatrix, smith_normal_form
from .openbook import (
    format_openbook,
    format_relative_openbook,
    full_lutz_on_binding,
    parse_openbook,
    t2xI_relative_piece,
)
from .reporting import VerificationReport
from .schemas import (
    CheckModel,
    ComponentModel,
    DiagramResponse,
    GroupModel,
    InvariantsResponse,
    OpenBookLutzResponse,
    RelativePieceResponse,
    SnfResponse,
    TraceModel,
    VerifyResponse,
)
from .surgery import (
    ContactSurgeryDiagram,
    format_diagram,
    full_lutz_link,
    homotopy_report,
    linking_matrix,
    parse_diagram,
    simple_lutz_link,
    topological_framing,
)
from .verification import run_battery


def diagram_response(d: ContactSurgeryDiagram) -> DiagramResponse:
    components = [
        ComponentModel(
            id=k,
            tb=d.link.knot(k).tb,
            rot=d.link.knot(k).rot,
            tf=topological_framing(d, k),
            coefficient=d.coefficient(k),
        )
        for k in d.components
    ]
    return DiagramResponse(
        ambient=d.ambient,
        components=components,
        linking_matrix=[list(row) for row in linking_matrix(d).entries],
        diagram=format_diagram(d),
    )


def build_lutz_link(tb: int, rot: int, simple: bool = False) -> DiagramResponse:
    d = simple_lutz_link(tb, rot) if simple else full_lutz_link(tb, rot)
    return diagram_response(d)


def compute_invariants(diagram_text: str) -> InvariantsResponse:
    d = parse_diagram(diagram_text)
    rep = homotopy_report(d)
    return InvariantsResponse(
        ambient=d.ambient,
        components=list(d.components),
        h1=GroupModel(
            free_rank=rep.h1.free_rank,
            torsion=list(rep.h1.torsion),
            description=rep.h1.describe(),
            meridian_images=[list(img) for img in rep.h1.meridian_images],
        ),
        euler_class=list(rep.euler_class),
        euler_vanishes=rep.euler_vanishes,
        d2=rep.d2_status,
        d3=None if rep.d3 is None else str(rep.d3),
        d3_reason=rep.d3_reason,
    )


def compute_snf(matrix_rows: list[list[int]]) -> SnfResponse:
    form = smith_normal_form(IntMatrix(matrix_rows))
    return SnfResponse(
        diagonal=list(form.diagonal),
        d=[list(row) for row in form.d.entries],
        u=[list(row) for row in form.u.entries],
        v=[list(row) for row in form.v.entries],
    )


def transform_openbook(openbook_text: str, binding: str) -> OpenBookLutzResponse:
    ob = parse_openbook(openbook_text)
    out, trace = full_lutz_on_binding(ob, binding)
    return OpenBookLutzResponse(
        openbook=format_openbook(out),
        genus=out.genus,
        boundaries=out.boundary_count,
        trace=TraceModel(
            lutz_curves=list(trace.lutz_curves),
            stabilization_curves=list(trace.stabilization_curves),
            boundaries_added=trace.boundaries_added,
            genus_before=trace.genus_before,
            genus_after=trace.genus_after,
        ),
    )


def relative_piece() -> RelativePieceResponse:
    rel = t2xI_relative_piece()
    return RelativePieceResponse(
        relative_openbook=format_relative_openbook(rel),
        genus=rel.page.genus,
        circles=rel.page.boundary_count,
        manifold_boundary=list(rel.manifold_boundary),
    )


def verify_response(report: VerificationReport) -> VerifyResponse:
    good, total = report.counts
    return VerifyResponse(
        checks=[
            CheckModel(name=c.name, expected=c.expected, got=c.got, passed=c.passed)
            for c in report.checks
        ],
        passed=report.passed,
        summary=f"{good}/{total} checks passed",
    )


def verify() -> VerifyResponse:
    return verify_response(run_battery())
