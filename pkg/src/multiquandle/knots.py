"""Knot diagrams in PD notation and quandle coloring counts.

PD convention: a crossing ``X[a,b,c,d]`` lists its four edge labels
counterclockwise starting from the incoming under-edge ``a``; ``c`` is the
outgoing under-edge, so ``c = a + 1`` modulo the edge count.  The
over-strand runs ``d -> b`` at a positive crossing (``b - d == 1`` or
``d - b > 1``) and ``b -> d`` at a negative one.

A coloring assigns target elements to edges so that both over-edges
agree and, with over color ``y``, the under-edges satisfy
``out = in |> y`` at positive crossings and ``in = out |> y`` at negative
ones.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .errors import ArcCountMismatch, AxiomViolation, LabelNotFound, MalformedPD, SearchLimitExceeded
from .multirack import MultiRack, restrict_operations, verify

DEFAULT_BUDGET = 10**7

TREFOIL = "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]"
TREFOIL_MIRROR = "X[1,5,2,4];X[3,1,4,6];X[5,3,6,2]"
FIGURE_EIGHT = "X[4,2,5,1];X[8,6,1,5];X[6,3,7,4];X[2,7,3,8]"

_TERM = re.compile(r"^X\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]$")


@dataclass(frozen=True)
class KnotDiagram:
    crossings: tuple[tuple[int, int, int, int], ...]
    arc_count: int
    signs: tuple[int, ...]

    def to_pd(self) -> str:
        if not self.crossings:
            return "unknot"
        return ";".join(f"X[{a},{b},{c},{d}]" for a, b, c, d in self.crossings)


@dataclass(frozen=True)
class QuandlePresentation:
    """Generators ``0..generator_count-1`` (one per PD edge).

    ``relations`` holds ``(i, j, k, sign)``: ``a_k = a_i |> a_j`` when
    ``sign`` is +1 and ``a_i = a_k |> a_j`` when it is -1.
    ``identifications`` holds pairs of edges that are the same over-strand.
    """

    generator_count: int
    relations: tuple[tuple[int, int, int, int], ...]
    identifications: tuple[tuple[int, int], ...] = ()

    def reduced(self) -> "QuandlePresentation":
        """Merge identified generators; the remaining ones are the Wirtinger arcs."""
        parent = list(range(self.generator_count))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for x, y in self.identifications:
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
        roots = sorted({find(x) for x in range(self.generator_count)})
        index = {r: i for i, r in enumerate(roots)}
        rel = tuple((index[find(i)], index[find(j)], index[find(k)], s) for i, j, k, s in self.relations)
        return QuandlePresentation(len(roots), rel)

    def permuted(self, perm: Sequence[int]) -> "QuandlePresentation":
        """Rename generator ``x`` to ``perm[x]``."""
        rel = tuple((perm[i], perm[j], perm[k], s) for i, j, k, s in self.relations)
        ident = tuple((perm[x], perm[y]) for x, y in self.identifications)
        return QuandlePresentation(self.generator_count, rel, ident)


def crossing_sign(b: int, d: int) -> int:
    if b - d == 1 or d - b > 1:
        return 1
    if d - b == 1 or b - d > 1:
        return -1
    raise MalformedPD(f"over-edges {b} and {d} coincide")


def parse_pd(text: str) -> KnotDiagram:
    text = text.strip()
    if text.lower() == "unknot":
        return KnotDiagram((), 1, ())
    terms = [t.strip() for t in text.split(";") if t.strip()]
    if not terms:
        raise MalformedPD("empty PD code")
    raw = []
    for term in terms:
        match = _TERM.match(term)
        if not match:
            raise MalformedPD(f"cannot parse crossing {term!r}")
        raw.append(tuple(int(x) for x in match.groups()))

    counts: dict[int, int] = {}
    for quad in raw:
        for x in quad:
            counts[x] = counts.get(x, 0) + 1
    for x in sorted(counts):
        if counts[x] != 2:
            raise ArcCountMismatch(x, counts[x])
    relabel = {x: i + 1 for i, x in enumerate(sorted(counts))}
    crossings = tuple(tuple(relabel[x] for x in quad) for quad in raw)
    n = len(relabel)
    if n != 2 * len(crossings):
        raise ArcCountMismatch(max(relabel), 2, f"but {len(crossings)} crossings need {2 * len(crossings)} edges")

    incoming, outgoing = {}, {}
    for a, _, c, _ in crossings:
        incoming[a] = incoming.get(a, 0) + 1
        outgoing[c] = outgoing.get(c, 0) + 1
    for where, table in (("incoming", incoming), ("outgoing", outgoing)):
        for edge in sorted(table):
            if table[edge] > 1:
                raise ArcCountMismatch(edge, table[edge], f"as an {where} under-edge")
    signs = []
    for a, b, c, d in crossings:
        if c != a % n + 1:
            raise MalformedPD(f"under-edges {a} -> {c} are not consecutive in X[{a},{b},{c},{d}]")
        if (b - d) % n not in (1, n - 1):
            raise MalformedPD(f"over-edges {b}, {d} are not consecutive in X[{a},{b},{c},{d}]")
        if n == 2:
            # a single kink: the over-strand must enter along the under-strand's exit edge
            sign = 1 if d == c else -1
        else:
            sign = crossing_sign(b, d)
        signs.append(sign)
        over_in, over_out = (d, b) if sign > 0 else (b, d)
        incoming[over_in] = incoming.get(over_in, 0) + 1
        outgoing[over_out] = outgoing.get(over_out, 0) + 1
    for edge in range(1, n + 1):
        if incoming.get(edge, 0) != 1:
            raise ArcCountMismatch(edge, incoming.get(edge, 0), "as an incoming end")
        if outgoing.get(edge, 0) != 1:
            raise ArcCountMismatch(edge, outgoing.get(edge, 0), "as an outgoing end")
    return KnotDiagram(crossings, n, tuple(signs))


def wirtinger_presentation(diagram: KnotDiagram) -> QuandlePresentation:
    relations = []
    identifications = []
    for (a, b, c, d), sign in zip(diagram.crossings, diagram.signs):
        relations.append((a - 1, b - 1, c - 1, sign))
        identifications.append((b - 1, d - 1))
    return QuandlePresentation(diagram.arc_count, tuple(relations), tuple(identifications))


def _operation(target: MultiRack, label: str):
    if label not in target.tables:
        raise LabelNotFound(label)
    report = verify(restrict_operations(target, [label]), check_quandle=True)
    if not report.passed:
        raise AxiomViolation(report)
    return target.tables[label].tolist(), target.right_inverse(label).tolist()


def count_colorings(p: QuandlePresentation, target: MultiRack, label: str, budget: int = DEFAULT_BUDGET) -> int:
    """Number of colorings of ``p`` by the operation ``label`` of ``target``."""
    T, R = _operation(target, label)
    m, g = target.order, p.generator_count
    # constraint (inp, over, out, fwd, back): out = fwd[inp][over], inp = back[out][over]
    constraints = []
    for i, j, k, sign in p.relations:
        constraints.append((i, j, k, T, R) if sign > 0 else (i, j, k, R, T))
    equal = [[] for _ in range(g)]
    for x, y in p.identifications:
        equal[x].append(y)
        equal[y].append(x)
    watch = [[] for _ in range(g)]
    for c in constraints:
        for x in set(c[:3]):
            watch[x].append(c)

    color = [-1] * g
    trail: list[int] = []
    nodes = 0

    def place(x: int, val: int) -> bool:
        queue = [(x, val)]
        while queue:
            y, v = queue.pop()
            if color[y] >= 0:
                if color[y] != v:
                    return False
                continue
            color[y] = v
            trail.append(y)
            for z in equal[y]:
                queue.append((z, v))
            for inp, over, out, fwd, back in watch[y]:
                ci, co, cz = color[inp], color[over], color[out]
                if co < 0:
                    continue
                if ci >= 0:
                    queue.append((out, fwd[ci][co]))
                elif cz >= 0:
                    queue.append((inp, back[cz][co]))
        return True

    def undo(mark: int):
        while len(trail) > mark:
            color[trail.pop()] = -1

    def rec() -> int:
        nonlocal nodes
        if len(trail) == g:
            return 1
        x = color.index(-1)
        total = 0
        for val in range(m):
            nodes += 1
            if nodes > budget:
                raise SearchLimitExceeded(budget)
            mark = len(trail)
            if place(x, val):
                total += rec()
            undo(mark)
        return total

    return rec()


def invariant_profile(diagram: KnotDiagram, targets: Sequence[tuple[MultiRack, str]]) -> tuple[int, ...]:
    p = wirtinger_presentation(diagram)
    return tuple(count_colorings(p, M, label) for M, label in targets)
