"""Run the requested analyses for a problem and render the results.

Results are plain data (dicts, lists, strings, ints) so the JSON rendering is
a direct dump and the text rendering is a fixed-order walk over the same data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .cones import Decoration, default_rays, fibered_cones
from .decomp_graph import Edge, SuturedGraph, class_equal, mv_certificate, prune_non_touching
from .errors import NonSeparatingBlackEdge, SemanticError
from .laurent import LaurentPoly, RingHom, format_laurent, parse_laurent, variable_names
from .pd import knot_pair_matrix
from .presentation import GroupPresentation, abelianization, alexander_matrix
from .problem import ProblemSpec
from .torsion import (AlphaClass, Verdict, chi_sfh_alpha, chi_support, extremal_spinc,
                      product_test, sutured_alexander)

BANNER = "Euler-characteristic level; CANDIDATE ≠ proven fibered"

NOTE_SPINC = ("Spin^c classes are identified with H_1 only up to translation; exponents are "
              "shown with componentwise minimum 0.")
NOTE_SIGN = "chi values carry a conventional sign; verdicts use |chi| only."
NOTE_KNOT = ("Knot mode reads the Fox-calculus Alexander polynomial of the knot exterior as "
             "the torsion of the meridionally sutured exterior. That identification rests on "
             "an external theorem relating SFH Euler characteristics to maximal abelian "
             "torsion; it is not re-derived here.")
NOTE_ZERO = ("hypothesis failure: Delta = 0, so chi(SFH_alpha) != 0 fails for every alpha and "
             "nothing is concluded")
NOTE_GRAPH = "The piece graph is a combinatorial model; it is not checked against a 3-manifold."


@dataclass
class Results:
    sections: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    hypothesis_failure: bool = False

    @property
    def exit_code(self) -> int:
        return 2 if self.hypothesis_failure else 0


def _poly(p: LaurentPoly, names) -> str:
    return format_laurent(p, names)


def _torsion_input(spec: ProblemSpec) -> tuple[list, RingHom, list[str]]:
    """Square boundary matrix, the map psi applied to it, and output variable names."""
    p = spec.payload
    if spec.mode == "knot":
        _, B = knot_pair_matrix(p["pd"], p.get("arcs"))
        return B, RingHom.identity(1), ["t"]
    if spec.mode == "presentation":
        names = p["generators"]
        G = GroupPresentation.parse(names, p["relators"])
        ab = abelianization(G)
        if "psi" in p:
            psi = RingHom(p["psi"], ab.free_rank, len(p["psi"])) if p["psi"] else \
                RingHom.trivial(ab.free_rank)
            if p["psi"] and len(p["psi"][0]) != ab.free_rank:
                raise SemanticError(f"psi must have {ab.free_rank} columns (free rank of H_1)",
                                    "psi")
        else:
            psi = RingHom.identity(ab.free_rank)
        J = alexander_matrix(G, psi, ab)
        keep_r = [i for i in range(len(G.relators)) if i not in set(p["drop_relators"])]
        keep_g = [j for j, g in enumerate(names) if g not in set(p["y_generators"])]
        B = [[J[i][j] for i in keep_r] for j in keep_g]
        return B, RingHom.identity(psi.target_rank), variable_names(psi.target_rank)
    names = p["variables"]
    A = [[parse_laurent(e, len(names), names) for e in row] for row in p["matrix"]]
    if "psi" in p:
        psi = RingHom(p["psi"], len(names), len(p["psi"]))
        return A, psi, variable_names(psi.target_rank)
    return A, RingHom.identity(len(names)), names


def _vec(e) -> list:
    return [int(a) if getattr(a, "denominator", 1) == 1 else str(a) for a in e]


def run_torsion(spec: ProblemSpec, res: Results) -> None:
    A, psi, names = _torsion_input(spec)
    delta = sutured_alexander(A, psi)
    rank = psi.target_rank
    want = spec.analyses
    if spec.mode == "knot":
        res.notes.append(NOTE_KNOT)
    if "alexander" in want:
        res.sections["alexander"] = {
            "delta": _poly(delta, names),
            "matrix_size": len(A),
            "variables": names,
            "product_test": str(product_test(delta)),
        }
    needs_support = any(a in want for a in ("support", "extremal", "fibered"))
    if not needs_support:
        return
    if delta.is_zero:
        res.hypothesis_failure = True
        res.notes.append(NOTE_ZERO)
    res.notes.extend([NOTE_SPINC, NOTE_SIGN])
    S = chi_support(delta)
    if "support" in want:
        res.sections["support"] = {
            "points": [{"exponent": list(e), "chi": c} for e, c in S.points.items()],
            "caveat": "classes with SFH != 0 but chi = 0 are invisible",
        }
    if "extremal" in want:
        if S.is_empty:
            res.sections["extremal"] = {"verdict": str(Verdict.INCONCLUSIVE), "vertices": []}
        else:
            res.sections["extremal"] = {"vertices": [
                {"exponent": list(v), "chi": S.points[v], "witness": _vec(w.coeffs)}
                for v, w in sorted(extremal_spinc(S).items())]}
    if "fibered" in want:
        p = spec.payload
        decs = p.get("decorations", [[[1]]] if spec.mode == "knot" else None)
        rays = [tuple(r) for r in p.get("rays", default_rays(rank))]
        if S.is_empty:
            res.sections["fibered"] = {
                "exists": False, "cones": [],
                "rays": [{"alpha": list(a), "verdict": str(Verdict.INCONCLUSIVE),
                          "reason": "Delta = 0"} for a in rays]}
            return
        fc = fibered_cones(S, [Decoration(d) for d in decs])
        cones = [{"decoration": [list(c) for c in f.decoration.curves], "vertex": list(f.vertex),
                  "chi": f.chi, "strict": [list(r) for r in f.cone.strict],
                  "excluded": [list(h) for h in f.cone.excluded],
                  "witness": list(f.cone.witness())}
                 for f in fc.cones]
        cones.sort(key=lambda c: json.dumps(c, sort_keys=True))
        out_rays = []
        for a in rays:
            v, why = fc.verdict(a)
            chi = chi_sfh_alpha(S, AlphaClass(a))
            out_rays.append({"alpha": list(a), "verdict": str(v), "reason": why,
                             "chi_alpha": chi.magnitude, "minimizers": [list(m) for m in chi.minimizers]})
        res.sections["fibered"] = {"exists": fc.exists, "cones": cones, "rays": out_rays}


def _graph(spec: ProblemSpec) -> SuturedGraph:
    p = spec.payload
    edges = [Edge(e["id"], e["tail"], e["head"], e["color"], e["weight"]) for e in p["edges"]]
    return SuturedGraph(p["vertices"], edges)


def run_graph(spec: ProblemSpec, res: Results) -> None:
    G = _graph(spec)
    res.notes.append(NOTE_GRAPH)
    mv = mv_certificate(G)
    section = {"mv_certificate": {
        "verdict": mv.verdict, "rows": [str(r) for r in mv.rows], "cols": list(mv.cols),
        "determinant": None if mv.determinant is None else _poly(mv.determinant, ["x"])}}
    try:
        final, cert = prune_non_touching(G)
    except NonSeparatingBlackEdge as exc:
        res.hypothesis_failure = True
        res.notes.append(f"hypothesis failure: {exc} (Delta^alpha != 0 cannot hold here)")
        section["prune"] = {"status": "NonSeparatingBlackEdge", "edge": exc.edge}
        res.sections["prune"] = section
        return
    section["prune"] = {
        "status": "ok",
        "surviving_edges": sorted(final),
        "steps": [{"edge": s.edge, "black_side": sorted(map(str, s.black_side)),
                   "side_edges": sorted(s.side_edges)} for s in cert.steps],
        "class_equal": class_equal(G, G.edges, final),
        "witness": {str(k): v for k, v in sorted(cert.witness.items())} if cert.witness else None,
    }
    res.sections["prune"] = section


def run(spec: ProblemSpec) -> Results:
    res = Results()
    if spec.mode == "graph":
        run_graph(spec, res)
    else:
        run_torsion(spec, res)
    return res


def _text_lines(value, indent):
    pad = "  " * indent
    if isinstance(value, dict):
        for k in sorted(value):
            v = value[k]
            if isinstance(v, (dict, list)) and v:
                yield f"{pad}{k}:"
                yield from _text_lines(v, indent + 1)
            else:
                yield f"{pad}{k}: {_scalar(v)}"
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, dict):
                first = True
                for line in _text_lines(v, indent + 1):
                    yield (pad + "- " + line.lstrip()) if first else line
                    first = False
            else:
                yield f"{pad}- {_scalar(v)}"


def _scalar(v) -> str:
    if isinstance(v, (list, dict)) or v is None or isinstance(v, bool):
        return json.dumps(v)
    return str(v)


def emit_report(spec: ProblemSpec, results: Results, fmt: str | None = None) -> str:
    fmt = fmt or spec.format
    doc = {
        "banner": BANNER,
        "problem": spec.to_dict(),
        "results": results.sections,
        "notes": results.notes,
        "exit_code": results.exit_code,
    }
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    lines = ["sutura report", BANNER, f"mode: {spec.mode}",
             f"analyses: {', '.join(spec.analyses)}"]
    for name in sorted(results.sections):
        lines.append(f"[{name}]")
        lines.extend(_text_lines(results.sections[name], 1))
    if results.notes:
        lines.append("[notes]")
        lines.extend(f"  - {n}" for n in results.notes)
    return "\n".join(lines) + "\n"
