"""Multi-racks on the carrier ``{0..m-1}`` and their morphisms.

A multi-rack is a family of operation tables ``T_s`` indexed by opaque
string labels, where ``T_s[u][v]`` is ``u |>_s v``.  Each operation must be
right-invertible (every column is a permutation) and every ordered pair of
labels ``(s, t)`` must satisfy the exchange identity

    (u |>_s v) |>_t w == (u |>_t w) |>_s (v |>_t w).

A multi-quandle additionally has ``u |>_s u == u`` everywhere.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .errors import AxiomViolation, EmptyLabelSet, ShapeMismatch

NON_DEGENERATE = "NonDegenerate"
EXCHANGE = "Exchange"
QUANDLE_DIAGONAL = "QuandleDiagonal"
AXIOMS = (NON_DEGENERATE, EXCHANGE, QUANDLE_DIAGONAL)

DEFAULT_MAX_VIOLATIONS = 10


class Violation(NamedTuple):
    """One failed axiom instance.

    Witness layouts:

    * ``NonDegenerate``: ``(s, v, u1, u2)`` with ``u1 != u2`` and
      ``u1 |>_s v == u2 |>_s v``.
    * ``Exchange``: ``(s, t, u, v, w)`` with
      ``(u |>_s v) |>_t w != (u |>_t w) |>_s (v |>_t w)``.
    * ``QuandleDiagonal``: ``(s, u)`` with ``u |>_s u != u``.
    """

    axiom: str
    witness: tuple


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    violations: tuple[Violation, ...] = ()

    def by_axiom(self, axiom: str) -> list[Violation]:
        return [v for v in self.violations if v.axiom == axiom]

    def format(self) -> str:
        if self.passed:
            return "passed"
        lines = [f"failed: {len(self.violations)} violation(s) reported"]
        for v in self.violations:
            lines.append(f"{v.axiom} {' '.join(str(x) for x in v.witness)}")
        return "\n".join(lines)


def _frozen_table(table) -> np.ndarray:
    arr = np.array(table, dtype=np.int64)
    arr.setflags(write=False)
    return arr


def _normalize(labels: Sequence[str] | None, tables, order: int | None = None):
    """Check shapes and return ``(order, labels, {label: array})``."""
    if isinstance(tables, MultiRack):
        return tables.order, tables.labels, dict(tables.tables)
    if isinstance(tables, Mapping):
        if labels is None:
            labels = list(tables)
        elif set(labels) != set(tables):
            raise ShapeMismatch("labels and table keys differ")
        tables = [tables[s] for s in labels]
    if labels is None:
        raise ShapeMismatch("labels are required when tables are given as a sequence")
    labels = tuple(labels)
    if not labels:
        raise EmptyLabelSet("a multi-rack needs at least one operation")
    if len(set(labels)) != len(labels):
        raise ShapeMismatch(f"duplicate operation labels in {labels}")
    if not all(isinstance(s, str) for s in labels):
        raise ShapeMismatch("operation labels must be strings")
    if len(tables) != len(labels):
        raise ShapeMismatch("one table per label is required")
    out = {}
    for s, t in zip(labels, tables):
        arr = np.asarray(t)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise ShapeMismatch(f"table {s!r} is not a non-empty square array")
        if not np.issubdtype(arr.dtype, np.integer):
            raise ShapeMismatch(f"table {s!r} has non-integer entries")
        if order is None:
            order = arr.shape[0]
        if arr.shape[0] != order:
            raise ShapeMismatch(f"table {s!r} has size {arr.shape[0]}, expected {order}")
        if arr.min() < 0 or arr.max() >= order:
            raise ShapeMismatch(f"table {s!r} has entries outside 0..{order - 1}")
        out[s] = _frozen_table(arr)
    return order, labels, out


@dataclass(frozen=True, eq=False)
class MultiRack:
    """A verified multi-rack.  Build it with :func:`multirack_from_tables`."""

    order: int
    labels: tuple[str, ...]
    tables: Mapping[str, np.ndarray] = field(repr=False)

    def op(self, s: str, u: int, v: int) -> int:
        return int(self.tables[s][u, v])

    def table(self, s: str) -> list[list[int]]:
        return self.tables[s].tolist()

    def is_quandle(self) -> bool:
        idx = np.arange(self.order)
        return all(np.array_equal(self.tables[s][idx, idx], idx) for s in self.labels)

    def right_inverse(self, s: str) -> np.ndarray:
        """Table ``R`` with ``R[x, v] = u`` exactly when ``u |>_s v == x``."""
        T = self.tables[s]
        inv = np.empty_like(T)
        cols = np.arange(self.order)
        inv[T, cols[None, :]] = np.arange(self.order)[:, None]
        return inv

    def concatenated(self) -> tuple[int, ...]:
        return tuple(int(x) for s in self.labels for x in self.tables[s].ravel())

    def __eq__(self, other):
        if not isinstance(other, MultiRack):
            return NotImplemented
        return (
            self.order == other.order
            and self.labels == other.labels
            and all(np.array_equal(self.tables[s], other.tables[s]) for s in self.labels)
        )

    def __hash__(self):
        return hash((self.order, self.labels, self.concatenated()))


def _trusted(order: int, labels: Sequence[str], tables: Mapping[str, np.ndarray]) -> MultiRack:
    return MultiRack(
        order=order,
        labels=tuple(labels),
        tables=MappingProxyType({s: _frozen_table(tables[s]) for s in labels}),
    )


# verification


def _non_degeneracy(labels, tables, m, cap, out):
    for s in labels:
        T = tables[s]
        ok = np.sort(T, axis=0) == np.arange(m)[:, None]
        for v in np.flatnonzero(~ok.all(axis=0)):
            seen = {}
            for u in range(m):
                x = int(T[u, v])
                if x in seen:
                    out.append(Violation(NON_DEGENERATE, (s, int(v), seen[x], u)))
                    break
                seen[x] = u
            if cap is not None and len(out) >= cap:
                return


def _exchange(labels, tables, m, cap, out):
    w = np.arange(m)
    for s in labels:
        Ts = tables[s]
        for t in labels:
            Tt = tables[t]
            lhs = Tt[Ts[:, :, None], w[None, None, :]]
            rhs = Ts[Tt[:, None, :], Tt[None, :, :]]
            bad = np.argwhere(lhs != rhs)
            for u, v, x in bad[: None if cap is None else cap - len(out)]:
                out.append(Violation(EXCHANGE, (s, t, int(u), int(v), int(x))))
            if cap is not None and len(out) >= cap:
                return


def _diagonal(labels, tables, m, cap, out):
    idx = np.arange(m)
    for s in labels:
        bad = np.flatnonzero(tables[s][idx, idx] != idx)
        for u in bad[: None if cap is None else cap - len(out)]:
            out.append(Violation(QUANDLE_DIAGONAL, (s, int(u))))
        if cap is not None and len(out) >= cap:
            return


def verify(
    tables,
    check_quandle: bool = False,
    max_violations: int | None = DEFAULT_MAX_VIOLATIONS,
    labels: Sequence[str] | None = None,
) -> VerificationReport:
    """Exhaustively check the multi-rack axioms (and optionally the quandle law).

    ``tables`` is a :class:`MultiRack`, a mapping ``label -> table``, or a
    sequence of tables together with ``labels``.  At most ``max_violations``
    witnesses are reported (``None`` for all), ordered by axiom and then
    lexicographically by witness.
    """
    m, labels, arrs = _normalize(labels, tables)
    out: list[Violation] = []
    checks = [_non_degeneracy, _exchange] + ([_diagonal] if check_quandle else [])
    for check in checks:
        if max_violations is not None and len(out) >= max_violations:
            break
        check(labels, arrs, m, max_violations, out)
    return VerificationReport(passed=not out, violations=tuple(out))


def replay(violation: Violation, tables) -> bool:
    """True if ``violation`` really is a failure of ``tables``."""
    _, _, T = _normalize(None, tables)
    wit = violation.witness
    if violation.axiom == NON_DEGENERATE:
        s, v, u1, u2 = wit
        return u1 != u2 and T[s][u1, v] == T[s][u2, v]
    if violation.axiom == EXCHANGE:
        s, t, u, v, w = wit
        return T[t][T[s][u, v], w] != T[s][T[t][u, w], T[t][v, w]]
    if violation.axiom == QUANDLE_DIAGONAL:
        s, u = wit
        return T[s][u, u] != u
    raise ValueError(f"unknown axiom {violation.axiom!r}")


def multirack_from_tables(order: int, labels: Sequence[str], tables, require_quandle: bool = False) -> MultiRack:
    """Validate and build a multi-rack; raises :class:`AxiomViolation` on failure."""
    m, labels, arrs = _normalize(labels, tables, order=order)
    report = verify(arrs, check_quandle=require_quandle, labels=labels)
    if not report.passed:
        raise AxiomViolation(report)
    return _trusted(m, labels, arrs)


def restrict_operations(M: MultiRack, keep: Iterable[str]) -> MultiRack:
    keep = set(keep)
    if not keep:
        raise EmptyLabelSet("cannot restrict to an empty set of operations")
    missing = keep - set(M.labels)
    if missing:
        raise ShapeMismatch(f"labels {sorted(missing)} are not operations of the multi-rack")
    labels = [s for s in M.labels if s in keep]
    return _trusted(M.order, labels, M.tables)


def rename_operations(M: MultiRack, mapping: Mapping[str, str]) -> MultiRack:
    labels = [mapping.get(s, s) for s in M.labels]
    if len(set(labels)) != len(labels):
        raise ShapeMismatch("renaming would merge operation labels")
    return _trusted(M.order, labels, {mapping.get(s, s): M.tables[s] for s in M.labels})


def mutate(tables, rng: random.Random):
    """Copy of ``tables`` with one uniformly chosen entry changed to a different value.

    Returns ``(mutated_tables, (label, u, v, old, new))``.
    """
    m, labels, T = _normalize(None, tables)
    if m < 2:
        raise ShapeMismatch("a one-point carrier has no alternative table values")
    s = rng.choice(labels)
    u, v = rng.randrange(m), rng.randrange(m)
    old = int(T[s][u, v])
    new = rng.choice([x for x in range(m) if x != old])
    out = {t: np.array(T[t]) for t in labels}
    out[s][u, v] = new
    return out, (s, u, v, old, new)


# morphisms


@dataclass(frozen=True)
class MorphismWitness:
    """A pair of maps: carriers ``element_map[u]`` and labels ``label_map[s]``."""

    element_map: tuple[int, ...]
    label_map: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "element_map", tuple(int(x) for x in self.element_map))
        object.__setattr__(self, "label_map", MappingProxyType(dict(self.label_map)))

    def __eq__(self, other):
        if not isinstance(other, MorphismWitness):
            return NotImplemented
        return self.element_map == other.element_map and dict(self.label_map) == dict(other.label_map)

    def __hash__(self):
        return hash((self.element_map, tuple(sorted(self.label_map.items()))))

    def is_bijective(self) -> bool:
        return sorted(self.element_map) == list(range(len(self.element_map))) and len(
            set(self.label_map.values())
        ) == len(self.label_map)

    def to_dict(self) -> dict:
        return {"elementMap": list(self.element_map), "labelMap": dict(self.label_map)}


def identity_morphism(M: MultiRack) -> MorphismWitness:
    return MorphismWitness(tuple(range(M.order)), {s: s for s in M.labels})


def inverse_morphism(w: MorphismWitness) -> MorphismWitness:
    if not w.is_bijective():
        raise ShapeMismatch("only bijective witnesses can be inverted")
    inv = [0] * len(w.element_map)
    for u, x in enumerate(w.element_map):
        inv[x] = u
    return MorphismWitness(tuple(inv), {t: s for s, t in w.label_map.items()})


def _check_shapes(M: MultiRack, N: MultiRack, w: MorphismWitness):
    if len(w.element_map) != M.order:
        raise ShapeMismatch(f"element map has length {len(w.element_map)}, source order is {M.order}")
    if any(not 0 <= x < N.order for x in w.element_map):
        raise ShapeMismatch("element map leaves the target carrier")
    if set(w.label_map) != set(M.labels):
        raise ShapeMismatch("label map must be defined exactly on the source labels")
    if any(t not in N.tables for t in w.label_map.values()):
        raise ShapeMismatch("label map hits labels missing from the target")


def is_morphism(M: MultiRack, N: MultiRack, w: MorphismWitness) -> bool:
    _check_shapes(M, N, w)
    phi = np.array(w.element_map, dtype=np.int64)
    for s in M.labels:
        lhs = phi[M.tables[s]]
        rhs = N.tables[w.label_map[s]][phi[:, None], phi[None, :]]
        if not np.array_equal(lhs, rhs):
            return False
    return True


def compose(w1: MorphismWitness, w2: MorphismWitness) -> MorphismWitness:
    """The morphism ``w2 . w1`` (first ``w1``, then ``w2``)."""
    if any(not 0 <= x < len(w2.element_map) for x in w1.element_map):
        raise ShapeMismatch("first element map leaves the domain of the second")
    if any(t not in w2.label_map for t in w1.label_map.values()):
        raise ShapeMismatch("first label map leaves the domain of the second")
    return MorphismWitness(
        tuple(w2.element_map[x] for x in w1.element_map),
        {s: w2.label_map[t] for s, t in w1.label_map.items()},
    )


# file format


def multirack_to_dict(M: MultiRack) -> dict:
    return {"order": M.order, "labels": list(M.labels), "tables": {s: M.table(s) for s in M.labels}}


def multirack_to_json(M: MultiRack) -> str:
    return json.dumps(multirack_to_dict(M))


def load_multirack_dict(data) -> tuple[int, list[str], dict]:
    """Shape-check a decoded MultiRack file without verifying axioms."""
    if not isinstance(data, dict) or not {"order", "labels", "tables"} <= set(data):
        raise ShapeMismatch('multi-rack file needs keys "order", "labels" and "tables"')
    order, labels, tables = data["order"], data["labels"], data["tables"]
    if not isinstance(order, int) or order < 1:
        raise ShapeMismatch('"order" must be a positive integer')
    if not isinstance(labels, list) or not isinstance(tables, dict):
        raise ShapeMismatch('"labels" must be a list and "tables" an object')
    m, labels, arrs = _normalize(labels, tables, order=order)
    return m, list(labels), arrs


def multirack_from_json(text: str, require_quandle: bool = False) -> MultiRack:
    order, labels, tables = load_multirack_dict(json.loads(text))
    return multirack_from_tables(order, labels, tables, require_quandle=require_quandle)


def witness_from_dict(data) -> MorphismWitness:
    if not isinstance(data, dict) or not {"elementMap", "labelMap"} <= set(data):
        raise ShapeMismatch('witness needs keys "elementMap" and "labelMap"')
    return MorphismWitness(tuple(data["elementMap"]), dict(data["labelMap"]))
