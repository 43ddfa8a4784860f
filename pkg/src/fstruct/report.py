"""Assemble the full analysis of one F-structure into a JSON-ready dict and text."""

from __future__ import annotations

from fstruct.cr import cr_analysis
from fstruct.fstructure import FStructure, check_decomposition, check_projector_identities
from fstruct.integrability import analyze, classify
from fstruct.manifest import Manifest, format_rational
from fstruct.nijenhuis import integrable_consequences, nijenhuis_identity_suite, nijenhuis_of


def run_report(S: FStructure, Fhat=None, name: str | None = None, strict: bool = True) -> dict:
    rep = analyze(S, strict=strict)
    suites = [check_projector_identities(S), check_decomposition(S),
              nijenhuis_identity_suite(S), integrable_consequences(S)]
    out = {}
    if name is not None:
        out["name"] = name
    out.update({
        "structure_ok": True,
        "parameters": {"alpha": format_rational(S.alpha), "beta": format_rational(S.beta), "K": S.K},
        "n": S.n,
        "rank": S.r,
        "dims": {"Dl": S.Dl.dim, "Dm": S.Dm.dim},
        "l": S.l.to_strings(),
        "m": S.m.to_strings(),
        "Dl_basis": [v.to_strings() for v in S.Dl.basis],
        "Dm_basis": [v.to_strings() for v in S.Dm.basis],
        "flags": rep.flags(),
        "classification": classify(S.alpha, S.beta, S.K).to_dict(),
        "consistency_ok": rep.consistency_ok,
        "problems": list(rep.problems),
        "frobenius": dict(rep.frobenius),
        "nijenhuis": nijenhuis_of(S.F).to_dict(),
        "identities": [s.to_dict() for s in suites],
        "evidence": [d.to_dict() for d in rep.decisions],
        "warnings": list(S.warnings),
    })
    if Fhat is not None:
        out["cr"] = cr_analysis(S, Fhat).to_dict()
    return out


def manifest_report(m: Manifest, strict: bool = True) -> dict:
    return run_report(m.structure(), m.Fhat, m.name, strict)


def render_text(report: dict) -> str:
    p = report["parameters"]
    lines = []
    if "name" in report:
        lines.append(report["name"])
    lines.append(f"structure: alpha={p['alpha']} beta={p['beta']} K={p['K']}  ok")
    lines.append(f"rank {report['rank']} of {report['n']}; dim D_l = {report['dims']['Dl']}, "
                 f"dim D_m = {report['dims']['Dm']}")
    lines.append(f"l = {report['l']}")
    lines.append(f"m = {report['m']}")
    for key, value in report["flags"].items():
        lines.append(f"  {key:<14} {'yes' if value else 'no'}")
    cls = report["classification"]
    lines.append(f"classification: {cls['label']}")
    nonzero = {k: v for k, v in report["nijenhuis"].items() if any(c != "0" for c in v)}
    if nonzero:
        lines.append("nonzero N_F on frame pairs:")
        for k, v in nonzero.items():
            lines.append(f"  N_F({k}) = {v}")
    else:
        lines.append("N_F vanishes on every frame pair")
    for suite in report["identities"]:
        if not suite["applicable"]:
            lines.append(f"{suite['suite']}: not applicable")
            continue
        ok = sum(c["passed"] for c in suite["checks"])
        lines.append(f"{suite['suite']}: {ok}/{len(suite['checks'])} pass")
    lines.append(f"consistency: {'ok' if report['consistency_ok'] else 'FAILED'}")
    for prob in report["problems"]:
        lines.append(f"  {prob}")
    for w in report["warnings"]:
        lines.append(f"warning: {w}")
    if "cr" in report:
        lines.append(render_cr(report["cr"]))
    return "\n".join(lines)


def render_cr(cr: dict) -> str:
    lines = [f"H: complex dimension {cr['complex_dim']}, basis {cr['H_basis']}",
             f"  disjoint from conjugate: {'yes' if cr['disjoint'] else 'no'}",
             f"  involutive: {'yes' if cr['involutive'] else 'no'}",
             f"  N_Fhat vanishes: {'yes' if cr['fhat_integrable'] else 'no'}",
             f"  CR structure: {'yes' if cr['is_cr'] else 'no'}"]
    return "\n".join(lines)
