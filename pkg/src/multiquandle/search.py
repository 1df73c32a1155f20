"""Backtracking searches over multi-rack morphisms.

Element maps are built one carrier element at a time.  Every new
assignment is propagated: once ``u`` and ``v`` both have images, the image
of ``u |>_s v`` is forced to ``Phi(u) |>_{phi(s)} Phi(v)``.  Quandle
structures are usually generated by a handful of elements, so most of the
map is forced and the tree stays small.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from typing import Mapping, Sequence

import numpy as np

from .errors import SearchLimitExceeded, SizeLimitExceeded, ShapeMismatch
from .multirack import MorphismWitness, MultiRack, _trusted, verify

DEFAULT_BUDGET = 10**7

MAX_ENUM_ORDER = 5
MAX_ENUM_LABELS = 2


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.nodes > self.limit:
            raise SearchLimitExceeded(self.limit)


def _search(
    src: Sequence[list[list[int]]],
    tgt: Sequence[list[list[int]]],
    m: int,
    n: int,
    budget: _Budget,
    *,
    injective: bool = False,
    allowed: Sequence[Sequence[int]] | None = None,
    first_only: bool = False,
):
    """Count (or find one) maps ``Phi`` with ``Phi(src_k[u][v]) = tgt_k[Phi u][Phi v]``.

    Returns ``(count, first_map_or_None)``.
    """
    assign = [-1] * m
    owner = [-1] * n
    done: list[int] = []
    allowed_sets = [frozenset(a) for a in allowed] if allowed is not None else None
    pairs = list(zip(src, tgt))

    def place(u: int, x: int) -> bool:
        queue = [(u, x)]
        while queue:
            a, xa = queue.pop()
            if assign[a] >= 0:
                if assign[a] != xa:
                    return False
                continue
            if injective and owner[xa] >= 0:
                return False
            if allowed_sets is not None and xa not in allowed_sets[a]:
                return False
            assign[a] = xa
            owner[xa] = a
            done.append(a)
            for b in done:
                xb = assign[b]
                for S, T in pairs:
                    queue.append((S[a][b], T[xa][xb]))
                    if b != a:
                        queue.append((S[b][a], T[xb][xa]))
        return True

    def undo(mark: int):
        while len(done) > mark:
            a = done.pop()
            owner[assign[a]] = -1
            assign[a] = -1

    count = 0
    found = None

    def rec():
        nonlocal count, found
        if len(done) == m:
            count += 1
            if found is None:
                found = tuple(assign)
            return
        u = assign.index(-1)
        cands = allowed[u] if allowed is not None else range(n)
        for x in cands:
            budget.tick()
            mark = len(done)
            if place(u, x):
                rec()
                if first_only and found is not None:
                    return
            undo(mark)

    rec()
    return count, found


def _lists(M: MultiRack) -> dict[str, list[list[int]]]:
    return {s: M.tables[s].tolist() for s in M.labels}


def count_homomorphisms(
    M: MultiRack,
    N: MultiRack,
    fixed_label_map: Mapping[str, str] | None = None,
    budget: int = DEFAULT_BUDGET,
) -> int:
    """Number of morphisms ``M -> N``.

    With ``fixed_label_map`` only element maps compatible with that label
    map are counted; otherwise the count is summed over every label map.
    """
    if fixed_label_map is not None:
        if set(fixed_label_map) != set(M.labels) or any(t not in N.tables for t in fixed_label_map.values()):
            raise ShapeMismatch("fixed label map must send every source label to a target label")
        label_maps = [dict(fixed_label_map)]
    else:
        label_maps = [dict(zip(M.labels, c)) for c in itertools.product(N.labels, repeat=len(M.labels))]
    S, T = _lists(M), _lists(N)
    b = _Budget(budget)
    total = 0
    for phi in label_maps:
        src = [S[s] for s in M.labels]
        tgt = [T[phi[s]] for s in M.labels]
        c, _ = _search(src, tgt, M.order, N.order, b)
        total += c
    return total


# isomorphism


def _cycle_type(perm: Sequence[int]) -> tuple[int, ...]:
    seen = [False] * len(perm)
    lengths = []
    for i in range(len(perm)):
        if not seen[i]:
            k, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                k += 1
            lengths.append(k)
    return tuple(sorted(lengths))


def _orbits(T: list[list[int]], m: int) -> list[int]:
    """Orbit sizes of each element under the maps ``u -> u |> v``."""
    size = [0] * m
    for start in range(m):
        if size[start]:
            continue
        orbit = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for u in frontier:
                for v in range(m):
                    x = T[u][v]
                    if x not in orbit:
                        orbit.add(x)
                        nxt.append(x)
            frontier = nxt
        for u in orbit:
            size[u] = len(orbit)
    return size


def element_signatures(M: MultiRack) -> dict[str, list[tuple]]:
    """Per label, a relabeling-invariant fingerprint of each carrier element."""
    out = {}
    m = M.order
    for s in M.labels:
        T = M.tables[s].tolist()
        orbit = _orbits(T, m)
        sigs = []
        for v in range(m):
            column = [T[u][v] for u in range(m)]
            sigs.append(
                (
                    _cycle_type(column),
                    len(set(T[v])),
                    sum(1 for w in range(m) if T[v][w] == v),
                    T[v][v] == v,
                    orbit[v],
                )
            )
        out[s] = sigs
    return out


def structure_fingerprint(M: MultiRack) -> tuple:
    """Isomorphism invariant: equal for isomorphic multi-racks."""
    sigs = element_signatures(M)
    per_label = sorted(tuple(sorted(sigs[s])) for s in M.labels)
    # joint profile of each element across all labels, label order forgotten
    joint = sorted(tuple(sorted(sigs[s][v] for s in M.labels)) for v in range(M.order))
    return (M.order, len(M.labels), tuple(per_label), tuple(joint))


def find_isomorphism(M: MultiRack, N: MultiRack, budget: int = DEFAULT_BUDGET) -> MorphismWitness | None:
    """A bijective morphism ``M -> N`` with bijective label map, or ``None``.

    ``None`` means none exists.  Running out of ``budget`` search nodes
    raises :class:`SearchLimitExceeded` instead.
    """
    if M.order != N.order or len(M.labels) != len(N.labels):
        return None
    sM, sN = element_signatures(M), element_signatures(N)
    fpM = {s: Counter(sM[s]) for s in M.labels}
    fpN = {t: Counter(sN[t]) for t in N.labels}
    choices = [[t for t in N.labels if fpN[t] == fpM[s]] for s in M.labels]
    if any(not c for c in choices):
        return None
    S, T = _lists(M), _lists(N)
    b = _Budget(budget)

    def label_maps(i, used):
        if i == len(M.labels):
            yield {}
            return
        for t in choices[i]:
            if t in used:
                continue
            b.tick()
            for rest in label_maps(i + 1, used | {t}):
                rest[M.labels[i]] = t
                yield rest

    for phi in label_maps(0, frozenset()):
        allowed = [
            [x for x in range(N.order) if all(sM[s][u] == sN[phi[s]][x] for s in M.labels)]
            for u in range(M.order)
        ]
        if any(not a for a in allowed):
            continue
        src = [S[s] for s in M.labels]
        tgt = [T[phi[s]] for s in M.labels]
        _, found = _search(src, tgt, M.order, N.order, b, injective=True, allowed=allowed, first_only=True)
        if found is not None:
            return MorphismWitness(found, {s: phi[s] for s in M.labels})
    return None


def automorphisms(M: MultiRack) -> list[MorphismWitness]:
    """All automorphisms fixing every label (element maps only vary)."""
    S = _lists(M)
    ops = [S[s] for s in M.labels]
    out = []
    for perm in itertools.permutations(range(M.order)):
        if all(perm[T[u][v]] == T[perm[u]][perm[v]] for T in ops for u in range(M.order) for v in range(M.order)):
            out.append(MorphismWitness(perm, {s: s for s in M.labels}))
    return out


# canonical forms and enumeration


def canonical_form(M: MultiRack) -> tuple[int, ...]:
    """Lexicographically least concatenation of tables over all carrier and label relabelings."""
    m = M.order
    S = [M.tables[s] for s in M.labels]
    best = None
    for perm in itertools.permutations(range(m)):
        p = np.array(perm, dtype=np.int64)
        inv = np.argsort(p)
        # relabeled table: T'[p u][p v] = p T[u][v]
        relabeled = [p[T][np.ix_(inv, inv)].ravel() for T in S]
        for order in itertools.permutations(range(len(S))):
            cand = tuple(int(x) for i in order for x in relabeled[i])
            if best is None or cand < best:
                best = cand
    return best


def _from_flat(flat: Sequence[int], m: int, labels: Sequence[str]) -> MultiRack:
    k = len(labels)
    arr = np.array(flat, dtype=np.int64).reshape(k, m, m)
    return _trusted(m, labels, {s: arr[i] for i, s in enumerate(labels)})


def _column_tables(m: int, candidates: Sequence[Sequence[Sequence[int]]], budget: _Budget) -> list[tuple]:
    """All self-distributive tables whose column ``v`` is drawn from ``candidates[v]``.

    Columns ``sigma_v(u) = u |> v``; self-distributivity reads
    ``sigma_w . sigma_v = sigma_{sigma_w(v)} . sigma_w``.
    """
    cols: list[Sequence[int] | None] = [None] * m
    out = []

    def consistent(c: int) -> bool:
        for v in range(c + 1):
            for w in range(c + 1):
                sw, sv = cols[w], cols[v]
                x = sw[v]
                if x > c or c not in (v, w, x):
                    continue
                sx = cols[x]
                if any(sw[sv[u]] != sx[sw[u]] for u in range(m)):
                    return False
        return True

    def rec(c: int):
        if c == m:
            out.append(tuple(tuple(cols[v][u] for v in range(m)) for u in range(m)))
            return
        for sigma in candidates[c]:
            budget.tick()
            cols[c] = sigma
            if consistent(c):
                rec(c + 1)
        cols[c] = None

    rec(0)
    return out


def _candidate_columns(m: int, quandle: bool, pool: Sequence[Sequence[int]]) -> list[list[Sequence[int]]]:
    return [[p for p in pool if not quandle or p[v] == v] for v in range(m)]


def _classify(structures: Sequence[MultiRack], budget: _Budget) -> list[MultiRack]:
    buckets: dict[tuple, list[MultiRack]] = defaultdict(list)
    reps = []
    for X in structures:
        key = structure_fingerprint(X)
        bucket = buckets[key]
        for R in bucket:
            if find_isomorphism(X, R, budget=budget.limit) is not None:
                break
        else:
            bucket.append(X)
            reps.append(X)
    return reps


def enumerate_multiquandles(
    m: int,
    k: int = 1,
    require_quandle: bool = True,
    budget: int = DEFAULT_BUDGET,
) -> list[MultiRack]:
    """All multi-quandles (or multi-racks) of order ``m`` with ``k`` operations, up to isomorphism.

    Each class is returned as its canonical representative with labels
    ``s0, s1, ...``, sorted by the concatenated tables.
    """
    if not 1 <= m <= MAX_ENUM_ORDER or not 1 <= k <= MAX_ENUM_LABELS:
        raise SizeLimitExceeded(f"enumeration supports 1 <= m <= {MAX_ENUM_ORDER}, 1 <= k <= {MAX_ENUM_LABELS}")
    b = _Budget(budget)
    perms = list(itertools.permutations(range(m)))
    labels1 = ["s0"]
    singles = [
        _from_flat([x for row in t for x in row], m, labels1)
        for t in _column_tables(m, _candidate_columns(m, require_quandle, perms), b)
    ]
    reps = _classify(singles, b)
    if k == 2:
        labels2 = ["s0", "s1"]
        families = []
        for R in reps:
            aut = [w.element_map for w in automorphisms(R)]
            R_cols = [tuple(int(R.tables["s0"][u, v]) for u in range(m)) for v in range(m)]
            for t in _column_tables(m, _candidate_columns(m, require_quandle, aut), b):
                second = _from_flat([x for row in t for x in row], m, ["s1"])
                # the columns of R must also act by automorphisms of the second table
                T2 = second.tables["s1"]
                if all(
                    np.array_equal(np.array(c)[T2], T2[np.ix_(c, c)]) for c in R_cols
                ):
                    families.append(_from_flat(R.concatenated() + second.concatenated(), m, labels2))
        reps = _classify(families, b)
    labels = labels1 if k == 1 else ["s0", "s1"]
    canon = sorted(canonical_form(R) for R in reps)
    out = [_from_flat(c, m, labels) for c in canon]
    for X in out:
        assert verify(X, check_quandle=require_quandle).passed
    return out
