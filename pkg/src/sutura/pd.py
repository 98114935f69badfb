"""Planar diagram codes and Wirtinger presentations.

A crossing ``[a, b, c, d]`` lists its four edge labels counterclockwise,
starting from the incoming under-strand; ``c`` is the outgoing under-strand
and ``b``, ``d`` lie on the over-strand.  The crossing is positive when the
over-strand runs from ``d`` to ``b``.
"""

from __future__ import annotations

from collections import Counter
from typing import Sequence

from .errors import InvalidPD
from .laurent import LaurentPoly, RingHom
from .presentation import GroupPresentation, Word, abelianization, alexander_matrix

IN, OUT = "in", "out"


def _check(pd: Sequence[Sequence[int]]) -> list[tuple[int, int, int, int]]:
    out = []
    for k, x in enumerate(pd):
        x = tuple(x)
        if len(x) != 4:
            raise InvalidPD(f"crossing {k} has {len(x)} labels, expected 4")
        if not all(isinstance(a, int) for a in x):
            raise InvalidPD(f"crossing {k} has non-integer labels {x}")
        out.append(x)
    counts = Counter(a for x in out for a in x)
    bad = sorted(a for a, n in counts.items() if n != 2)
    if bad:
        raise InvalidPD(f"edge labels must appear exactly twice; offending labels {bad}")
    return out


def orientations(pd: Sequence[Sequence[int]]) -> dict[tuple[int, int], str]:
    """Whether each slot ``(crossing, position)`` carries an incoming or outgoing edge.

    Under-strands fix the direction; it is propagated along edges and
    through over-strands.  A component that never passes under is oriented
    with slot 1 incoming.
    """
    xs = _check(pd)
    occ: dict[int, list[tuple[int, int]]] = {}
    for k, x in enumerate(xs):
        for s, a in enumerate(x):
            occ.setdefault(a, []).append((k, s))
    state: dict[tuple[int, int], str] = {}
    for k in range(len(xs)):
        state[(k, 0)] = IN
        state[(k, 2)] = OUT
    flip = {IN: OUT, OUT: IN}

    def settle(slot, value):
        old = state.get(slot)
        if old is None:
            state[slot] = value
            return True
        if old != value:
            raise InvalidPD(f"inconsistent strand orientation at crossing {slot[0]}")
        return False

    while True:
        changed = False
        for a, (p, q) in occ.items():
            if p in state:
                changed |= settle(q, flip[state[p]])
            elif q in state:
                changed |= settle(p, flip[state[q]])
        for k in range(len(xs)):
            b, d = (k, 1), (k, 3)
            if b in state:
                changed |= settle(d, flip[state[b]])
            elif d in state:
                changed |= settle(b, flip[state[d]])
        if not changed:
            missing = next(((k, 1) for k in range(len(xs)) if (k, 1) not in state), None)
            if missing is None:
                break
            state[missing] = IN
    return state


def crossing_signs(pd: Sequence[Sequence[int]]) -> list[int]:
    st = orientations(pd)
    return [1 if st[(k, 3)] == IN else -1 for k in range(len(pd))]


def components(pd: Sequence[Sequence[int]]) -> int:
    xs = _check(pd)
    st = orientations(xs)
    occ: dict[int, list[tuple[int, int]]] = {}
    for k, x in enumerate(xs):
        for s, a in enumerate(x):
            occ.setdefault(a, []).append((k, s))
    nxt = {0: 2, 1: 3, 3: 1}
    seen: set[int] = set()
    count = 0
    for start in sorted(occ):
        if start in seen:
            continue
        count += 1
        a = start
        while a not in seen:
            seen.add(a)
            k, s = next(o for o in occ[a] if st[o] == IN)
            a = xs[k][nxt[s]]
    return count


def arcs(pd: Sequence[Sequence[int]]) -> list[list[int]]:
    """Over-arcs: classes of edge labels joined through over-crossings, by least label."""
    xs = _check(pd)
    parent = {a: a for x in xs for a in x}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for _, b, _, d in xs:
        rb, rd = find(b), find(d)
        if rb != rd:
            parent[max(rb, rd)] = min(rb, rd)
    groups: dict[int, list[int]] = {}
    for a in sorted(parent):
        groups.setdefault(find(a), []).append(a)
    return sorted(groups.values())


def wirtinger_from_pd(pd: Sequence[Sequence[int]], n_arcs: int | None = None) -> GroupPresentation:
    """One generator per over-arc, one relator per crossing.

    At a positive crossing with over-arc ``o``, incoming under-arc ``a`` and
    outgoing under-arc ``c`` the relator is ``o a O C``; at a negative one it
    is ``O a o C``.  A crossingless diagram needs ``n_arcs`` (one per
    unknotted component) and gives a free group.
    """
    xs = _check(pd)
    if not xs:
        if n_arcs is None or n_arcs < 1:
            raise InvalidPD("a diagram without crossings must declare its number of arcs")
        return GroupPresentation(n_arcs, ())
    groups = arcs(xs)
    if n_arcs is not None and n_arcs != len(groups):
        raise InvalidPD(f"diagram has {len(groups)} arcs, {n_arcs} declared")
    arc_of = {a: k for k, g in enumerate(groups) for a in g}
    signs = crossing_signs(xs)
    rels = []
    for (a, b, c, _), sign in zip(xs, signs):
        o, i, j = arc_of[b], arc_of[a], arc_of[c]
        if sign > 0:
            letters = ((o, 1), (i, 1), (o, -1), (j, -1))
        else:
            letters = ((o, -1), (i, 1), (o, 1), (j, -1))
        rels.append(Word(letters))
    return GroupPresentation(len(groups), tuple(rels))


def knot_pair_matrix(pd: Sequence[Sequence[int]], n_arcs: int | None = None
                     ) -> tuple[GroupPresentation, list[list[LaurentPoly]]]:
    """Square boundary matrix over Z[t^+-1] of (knot exterior, meridian).

    The meridian carried by the first arc spans R_-; its column is removed,
    together with the last (redundant) crossing relator.  The abelianization
    is oriented so that meridians map to ``t``.
    """
    G = wirtinger_from_pd(pd, n_arcs)
    if pd and components(pd) != 1:
        raise InvalidPD(f"knot mode needs a one-component diagram, got {components(pd)} components")
    if not pd and G.n_generators != 1:
        raise InvalidPD("knot mode needs a one-component diagram")
    ab = abelianization(G)
    if ab.free_rank != 1 or ab.torsion_divisors:
        raise InvalidPD(f"knot group abelianizes to rank {ab.free_rank} with torsion {ab.torsion_divisors}")
    sign = ab.to_free.image([1] + [0] * (G.n_generators - 1))[0]
    J = alexander_matrix(G, RingHom([[sign]]), ab)
    n = G.n_generators
    rows = J[: n - 1]
    A = [[row[j] for j in range(1, n)] for row in rows]
    if len(A) != n - 1:
        raise InvalidPD("diagram does not give a deficiency-one presentation")
    # C_2 -> C_1: rows are the 1-cells (generators), columns the 2-cells (relators)
    boundary = [[A[i][j] for i in range(len(A))] for j in range(n - 1)]
    return G, boundary


def braid_closure_pd(word: Sequence[int], strands: int) -> list[list[int]]:
    """PD code of the closure of a braid word (``i`` = sigma_i, ``-i`` = its inverse).

    Strands run upward; sigma_i is a positive crossing of strands i, i+1.
    """
    if strands < 1:
        raise InvalidPD("at least one strand is required")
    label = 0
    pos = []
    for _ in range(strands):
        label += 1
        pos.append(label)
    start = list(pos)
    crossings = []
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < strands - 1:
            raise InvalidPD(f"generator {g} out of range for {strands} strands")
        p, q = pos[i], pos[i + 1]
        np_, nq = label + 1, label + 2
        label += 2
        if g > 0:
            crossings.append([q, nq, np_, p])
        else:
            crossings.append([p, q, nq, np_])
        pos[i], pos[i + 1] = np_, nq
    ident = {end: beg for end, beg in zip(pos, start) if end != beg}
    crossings = [[ident.get(a, a) for a in x] for x in crossings]
    used = sorted({a for x in crossings for a in x})
    relabel = {a: k + 1 for k, a in enumerate(used)}
    return [[relabel[a] for a in x] for x in crossings]
