"""Problem files: one YAML (or JSON) document describing one computation.

Every field is validated here so that the pipelines only ever see
well-formed data; diagnostics name the field and, when known, the line.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import yaml

from .errors import ParseError, SemanticError, SuturaError
from .laurent import format_laurent, parse_laurent, variable_names
from .presentation import Word

MODES = ("knot", "presentation", "matrix", "graph")
TORSION_ANALYSES = ("alexander", "support", "extremal", "fibered")
GRAPH_ANALYSES = ("prune",)
ANALYSES = TORSION_ANALYSES + GRAPH_ANALYSES
FORMATS = ("text", "json")

_FIELDS = {
    "knot": {"pd", "arcs", "decorations", "rays"},
    "presentation": {"generators", "relators", "y_generators", "drop_relators", "psi",
                     "decorations", "rays"},
    "matrix": {"variables", "rank", "matrix", "psi", "decorations", "rays"},
    "graph": {"vertices", "edges"},
}
_COMMON = {"mode", "analyses", "format"}


def _load(text: str) -> tuple[Any, dict]:
    """YAML document plus a map from key paths to 1-based line numbers."""
    loader = yaml.SafeLoader(text)
    try:
        node = loader.get_single_node()
        if node is None:
            raise ParseError("empty problem file", 1)
        data = loader.construct_document(node)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        raise ParseError(exc.problem or str(exc), mark.line + 1 if mark else None) from None
    except yaml.YAMLError as exc:
        raise ParseError(str(exc)) from None
    finally:
        loader.dispose()
    lines: dict[tuple, int] = {}

    def walk(n, path):
        lines[path] = n.start_mark.line + 1
        if isinstance(n, yaml.MappingNode):
            for k, v in n.value:
                walk(v, path + (k.value,))
        elif isinstance(n, yaml.SequenceNode):
            for i, v in enumerate(n.value):
                walk(v, path + (i,))

    walk(node, ())
    return data, lines


@dataclass(frozen=True)
class ProblemSpec:
    """A validated problem in canonical form.

    ``payload`` holds the mode-specific fields as plain data (lists, ints,
    strings), already normalised, so that dumping and re-parsing gives an
    equal spec.
    """

    mode: str
    payload: dict = field(hash=False)
    analyses: tuple[str, ...] = ()
    format: str = "text"

    def to_dict(self) -> dict:
        out = {"mode": self.mode}
        out.update(self.payload)
        out["analyses"] = list(self.analyses)
        out["format"] = self.format
        return out


def dump_problem(spec: ProblemSpec) -> str:
    return yaml.safe_dump(spec.to_dict(), sort_keys=True, default_flow_style=None)


class _Ctx:
    def __init__(self, lines):
        self.lines = lines

    def fail(self, msg, *path):
        line = self.lines.get(tuple(path)) if path else None
        name = ".".join(str(p) for p in path) if path else None
        return SemanticError(msg, name, line)


def _int(ctx, v, *path, nonzero=False):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ctx.fail(f"expected an integer, got {v!r}", *path)
    if nonzero and v == 0:
        raise ctx.fail("expected a nonzero integer", *path)
    return v


def _int_matrix(ctx, m, key):
    if not isinstance(m, list) or not all(isinstance(r, list) for r in m):
        raise ctx.fail("expected a list of integer rows", key)
    rows = [[_int(ctx, a, key, i, j) for j, a in enumerate(r)] for i, r in enumerate(m)]
    if len({len(r) for r in rows}) > 1:
        raise ctx.fail("rows have different lengths", key)
    return rows


def _vectors(ctx, vs, n, *path):
    if not isinstance(vs, list) or not vs:
        raise ctx.fail("expected a nonempty list of integer vectors", *path)
    out = []
    for i, v in enumerate(vs):
        if not isinstance(v, list):
            raise ctx.fail("expected an integer vector", *path, i)
        if n is not None and len(v) != n:
            raise ctx.fail(f"expected {n} coordinates, got {len(v)}", *path, i)
        out.append([_int(ctx, a, *path, i, j) for j, a in enumerate(v)])
    return out


def _cohomology(ctx, data, payload, n):
    if "decorations" in data:
        decs = data["decorations"]
        if not isinstance(decs, list) or not decs:
            raise ctx.fail("expected a nonempty list of decorations (each a list of curves)",
                           "decorations")
        payload["decorations"] = [_vectors(ctx, d, n, "decorations", k) for k, d in enumerate(decs)]
    if "rays" in data:
        rays = _vectors(ctx, data["rays"], n, "rays")
        for i, r in enumerate(rays):
            if not any(r):
                raise ctx.fail("rays must be nonzero classes", "rays", i)
        payload["rays"] = rays


def _knot(ctx, data):
    if "pd" not in data:
        raise ctx.fail("knot mode needs a 'pd' field", "pd")
    pd = data["pd"]
    if not isinstance(pd, list):
        raise ctx.fail("expected a list of 4-label crossings", "pd")
    crossings = []
    for k, x in enumerate(pd):
        if not isinstance(x, list) or len(x) != 4:
            raise ctx.fail("each crossing is a list of 4 edge labels", "pd", k)
        crossings.append([_int(ctx, a, "pd", k, j) for j, a in enumerate(x)])
    payload: dict = {"pd": crossings}
    if "arcs" in data:
        payload["arcs"] = _int(ctx, data["arcs"], "arcs")
    elif not crossings:
        raise ctx.fail("a diagram without crossings must declare 'arcs'", "arcs")
    _cohomology(ctx, data, payload, 1)
    return payload


def _names(ctx, gens):
    if isinstance(gens, int) and not isinstance(gens, bool):
        if gens < 0:
            raise ctx.fail("generator count must be nonnegative", "generators")
        if gens > 26:
            raise ctx.fail("list generator names explicitly beyond 26 generators", "generators")
        return [chr(ord("a") + i) for i in range(gens)]
    if not isinstance(gens, list):
        raise ctx.fail("expected a generator count or a list of names", "generators")
    names = []
    for i, g in enumerate(gens):
        g = str(g)
        if not g or g != g.lower() or not g.isalnum() or not g[0].isalpha():
            raise ctx.fail(f"generator name {g!r} must be lowercase alphanumeric, starting "
                           f"with a letter (uppercase marks inverses)", "generators", i)
        names.append(g)
    if len(set(names)) != len(names):
        raise ctx.fail("generator names must be distinct", "generators")
    return names


def _presentation(ctx, data):
    for key in ("generators", "relators"):
        if key not in data:
            raise ctx.fail(f"presentation mode needs a {key!r} field", key)
    names = _names(ctx, data["generators"])
    rels = data["relators"]
    if not isinstance(rels, list):
        raise ctx.fail("expected a list of relator words", "relators")
    words = []
    for i, r in enumerate(rels):
        if not isinstance(r, str):
            raise ctx.fail("relators are strings of space-separated letters", "relators", i)
        try:
            words.append(Word.parse(r, names).format(names))
        except ParseError as exc:
            raise ctx.fail(f"{exc.message}; generators are {names}", "relators", i) from None
    payload: dict = {"generators": names, "relators": words}
    y = data.get("y_generators", [])
    if not isinstance(y, list):
        raise ctx.fail("expected a list of generator names", "y_generators")
    for i, g in enumerate(y):
        if str(g) not in names:
            raise ctx.fail(f"unknown generator {g!r}", "y_generators", i)
    payload["y_generators"] = sorted({str(g) for g in y}, key=names.index)
    drop = data.get("drop_relators", [])
    if not isinstance(drop, list):
        raise ctx.fail("expected a list of relator indices", "drop_relators")
    for i, d in enumerate(drop):
        if not 0 <= _int(ctx, d, "drop_relators", i) < len(words):
            raise ctx.fail(f"relator index {d} out of range", "drop_relators", i)
    payload["drop_relators"] = sorted(set(drop))
    rank = None
    if "psi" in data:
        payload["psi"] = _int_matrix(ctx, data["psi"], "psi")
        rank = len(payload["psi"])
    if rank is None and ("decorations" in data or "rays" in data):
        rank = _free_rank(names, words)
    _cohomology(ctx, data, payload, rank)
    return payload


def _free_rank(names, words):
    from .presentation import GroupPresentation, abelianization
    return abelianization(GroupPresentation.parse(names, words)).free_rank


def _matrix(ctx, data):
    if "matrix" not in data:
        raise ctx.fail("matrix mode needs a 'matrix' field", "matrix")
    if "variables" in data:
        vs = data["variables"]
        if not isinstance(vs, list) or not all(isinstance(v, str) for v in vs):
            raise ctx.fail("expected a list of variable names", "variables")
        names = list(vs)
    elif "rank" in data:
        names = variable_names(_int(ctx, data["rank"], "rank"))
    else:
        names = ["t"]
    rank = len(names)
    m = data["matrix"]
    if not isinstance(m, list) or not m or not all(isinstance(r, list) for r in m):
        raise ctx.fail("expected a nonempty list of rows of polynomials", "matrix")
    rows = []
    for i, r in enumerate(m):
        row = []
        for j, entry in enumerate(r):
            try:
                p = parse_laurent(str(entry), rank, names)
            except ParseError as exc:
                raise ctx.fail(exc.message, "matrix", i, j) from None
            row.append(format_laurent(p, names))
        rows.append(row)
    if len({len(r) for r in rows}) > 1:
        raise ctx.fail("matrix rows have different lengths", "matrix")
    payload: dict = {"variables": names, "matrix": rows}
    target = rank
    if "psi" in data:
        psi = _int_matrix(ctx, data["psi"], "psi")
        if psi and len(psi[0]) != rank:
            raise ctx.fail(f"psi must have {rank} columns, one per variable", "psi")
        payload["psi"] = psi
        target = len(psi)
    _cohomology(ctx, data, payload, target)
    return payload


def _graph(ctx, data):
    for key in ("vertices", "edges"):
        if key not in data:
            raise ctx.fail(f"graph mode needs a {key!r} field", key)
    vs = data["vertices"]
    if not isinstance(vs, dict) or not vs:
        raise ctx.fail("expected a nonempty mapping from vertex name to colour", "vertices")
    vertices = {}
    for name, color in vs.items():
        if color not in ("green", "black"):
            raise ctx.fail(f"colour must be green or black, got {color!r}", "vertices", name)
        vertices[str(name)] = color
    es = data["edges"]
    if not isinstance(es, list):
        raise ctx.fail("expected a list of edges", "edges")
    edges = []
    for k, e in enumerate(es):
        if isinstance(e, dict):
            unknown = set(e) - {"id", "tail", "head", "color", "weight"}
            if unknown:
                raise ctx.fail(f"unknown edge fields {sorted(unknown)}", "edges", k)
            try:
                rec = {"id": str(e.get("id", f"e{k}")), "tail": str(e["tail"]),
                       "head": str(e["head"]), "color": e["color"], "weight": e.get("weight", 1)}
            except KeyError as exc:
                raise ctx.fail(f"edge is missing {exc.args[0]!r}", "edges", k) from None
        elif isinstance(e, list) and len(e) in (3, 4):
            rec = {"id": f"e{k}", "tail": str(e[0]), "head": str(e[1]), "color": e[2],
                   "weight": e[3] if len(e) == 4 else 1}
        else:
            raise ctx.fail("an edge is [tail, head, colour, weight] or a mapping", "edges", k)
        for end in ("tail", "head"):
            if rec[end] not in vertices:
                raise ctx.fail(f"edge {end} {rec[end]!r} is not a vertex", "edges", k)
        if rec["color"] not in ("green", "black"):
            raise ctx.fail(f"colour must be green or black, got {rec['color']!r}", "edges", k)
        _int(ctx, rec["weight"], "edges", k, nonzero=True)
        edges.append(rec)
    if len({e["id"] for e in edges}) != len(edges):
        raise ctx.fail("edge ids must be distinct", "edges")
    return {"vertices": dict(sorted(vertices.items())), "edges": edges}


_BUILDERS = {"knot": _knot, "presentation": _presentation, "matrix": _matrix, "graph": _graph}


def parse_problem(text: str) -> ProblemSpec:
    data, lines = _load(text)
    if not isinstance(data, dict):
        raise ParseError("a problem file is a mapping of named fields", 1)
    ctx = _Ctx(lines)
    mode = data.get("mode")
    if mode not in MODES:
        raise ctx.fail(f"'mode' must be one of {', '.join(MODES)}", *(("mode",) if "mode" in data else ()))
    allowed = _FIELDS[mode] | _COMMON
    for key in data:
        if key not in allowed:
            raise ctx.fail(f"field {key!r} is not used in {mode} mode", key)
    valid = GRAPH_ANALYSES if mode == "graph" else TORSION_ANALYSES
    requested = data.get("analyses", ["all"])
    if isinstance(requested, str):
        requested = [requested]
    if not isinstance(requested, list):
        raise ctx.fail("expected a list of analyses", "analyses")
    analyses = []
    for i, a in enumerate(requested):
        if a == "all":
            analyses.extend(valid)
        elif a in valid:
            analyses.append(a)
        else:
            raise ctx.fail(f"analysis {a!r} is not available in {mode} mode "
                           f"(choose from {', '.join(valid)} or all)", "analyses", i)
    fmt = data.get("format", "text")
    if fmt not in FORMATS:
        raise ctx.fail("'format' must be text or json", "format")
    try:
        payload = _BUILDERS[mode](ctx, data)
    except SemanticError:
        raise
    except SuturaError as exc:
        raise SemanticError(str(exc)) from None
    spec = ProblemSpec(mode, payload, tuple(a for a in valid if a in analyses), fmt)
    check_requests(spec, ctx)
    return spec


def check_requests(spec: ProblemSpec, ctx: _Ctx | None = None) -> None:
    """Cross-field checks that depend on which analyses are requested."""
    ctx = ctx or _Ctx({})
    p = spec.payload
    torsion = any(a in TORSION_ANALYSES for a in spec.analyses)
    if spec.mode == "matrix" and torsion:
        rows = p["matrix"]
        if len(rows) != len(rows[0]):
            raise ctx.fail(
                f"sutured_alexander requires a square matrix (the balanced condition "
                f"chi(M, R_-) = 0); got {len(rows)} x {len(rows[0])}", "matrix")
    if spec.mode == "presentation" and torsion:
        cells1 = len(p["generators"]) - len(p["y_generators"])
        cells2 = len(p["relators"]) - len(p["drop_relators"])
        if cells1 != cells2:
            raise ctx.fail(
                f"sutured_alexander requires a square matrix: {cells1} generators outside "
                f"y_generators but {cells2} relators kept", "relators")
    if "fibered" in spec.analyses and spec.mode in ("presentation", "matrix") \
            and "decorations" not in p:
        raise ctx.fail("the fibered analysis needs 'decorations'", "decorations")


def with_overrides(spec: ProblemSpec, analyses: str | None = None, fmt: str | None = None) -> ProblemSpec:
    """Apply command-line ``--analysis`` / ``--format`` choices."""
    valid = GRAPH_ANALYSES if spec.mode == "graph" else TORSION_ANALYSES
    chosen = spec.analyses
    if analyses is not None:
        if analyses == "all":
            chosen = valid
        elif analyses in valid:
            chosen = (analyses,)
        else:
            raise SemanticError(f"analysis {analyses!r} is not available in {spec.mode} mode",
                                "analyses")
    out = ProblemSpec(spec.mode, spec.payload, tuple(chosen), fmt or spec.format)
    check_requests(out)
    return out
