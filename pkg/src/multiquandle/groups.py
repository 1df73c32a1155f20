"""Finite groups given by Cayley tables.

Elements are the dense indices ``0..n-1`` and ``cayley[a, b]`` is the
product ``a*b`` (row index is the left factor).  Everything here is
table-driven so that universally quantified identities can be checked
by scanning tables.

Conventions for :func:`standard_group`:

* ``cyclic n``: element ``k`` is the residue ``k``, product is addition mod n.
* ``dihedral n`` (order 2n): index ``i < n`` is the rotation ``r^i`` and
  ``n + i`` is the reflection ``r^i f``; ``f r f = r^-1``.
* ``symmetric n``: elements are the permutations of ``range(n)`` in
  lexicographic order (index 0 is the identity), a permutation is stored
  as its image tuple and products compose right to left,
  ``(a*b)(i) = a(b(i))``.
* ``quaternion8``: indices 0..7 are ``1, -1, i, -i, j, -j, k, -k``.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    MultiquandleError,
    NoIdentity,
    NoInverse,
    NotAssociative,
    ShapeMismatch,
    SizeLimitExceeded,
)

MAX_GROUP_ORDER = 5040
MAX_FULL_ASSOCIATIVITY = 200
MAX_SYMMETRIC_DEGREE = 6


def _frozen(array) -> np.ndarray:
    out = np.array(array, dtype=np.int64)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    order: int
    cayley: np.ndarray
    identity: int
    inverses: np.ndarray

    def mul(self, a: int, b: int) -> int:
        return int(self.cayley[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def product(self, *elements: int) -> int:
        out = self.identity
        for x in elements:
            out = int(self.cayley[out, x])
        return out

    def elements(self) -> range:
        return range(self.order)

    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.order == other.order and np.array_equal(self.cayley, other.cayley)

    def __hash__(self):
        return hash((self.order, self.cayley.tobytes()))

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


@dataclass(frozen=True)
class Subgroup:
    members: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(set(int(x) for x in self.members))))

    def __contains__(self, x) -> bool:
        return x in self._set

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @property
    def _set(self) -> frozenset:
        cached = self.__dict__.get("_member_set")
        if cached is None:
            cached = frozenset(self.members)
            object.__setattr__(self, "_member_set", cached)
        return cached


@dataclass(frozen=True)
class CosetSpace:
    """Left cosets ``uH``; ``block_of`` is the projection ``u -> uH``."""

    block_count: int
    block_of: tuple[int, ...]
    representatives: tuple[int, ...]

    def block(self, b: int) -> tuple[int, ...]:
        return tuple(u for u, c in enumerate(self.block_of) if c == b)


# construction and validation


def _latin_witness(table: np.ndarray, inverses: np.ndarray) -> tuple[int, int, int] | None:
    """Find an associativity witness from a repeated entry in a row or column.

    If ``a*b == a*c`` with ``b != c`` then associativity would force
    ``b = (a^-1 a) b = a^-1 (a b) = a^-1 (a c) = c``.
    """
    n = table.shape[0]
    for a in range(n):
        row = table[a]
        if len(np.unique(row)) != n:
            seen = {}
            for b in range(n):
                x = int(row[b])
                if x in seen:
                    for y in (seen[x], b):
                        ai = int(inverses[a])
                        if table[table[ai, a], y] != table[ai, table[a, y]]:
                            return (ai, a, y)
                seen[x] = b
        col = table[:, a]
        if len(np.unique(col)) != n:
            seen = {}
            for b in range(n):
                x = int(col[b])
                if x in seen:
                    for y in (seen[x], b):
                        ai = int(inverses[a])
                        if table[table[y, a], ai] != table[y, table[a, ai]]:
                            return (y, a, ai)
                seen[x] = b
    return None


def _right_closure(table: np.ndarray, start: int, gens: Sequence[int]) -> set[int]:
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(table[x, g])
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def _associativity_witness(table: np.ndarray, identity: int) -> tuple[int, int, int] | None:
    n = table.shape[0]
    if n <= MAX_FULL_ASSOCIATIVITY:
        lhs = table[table]  # lhs[a, b, c] = (a*b)*c
        rhs = table[:, table]  # rhs[a, b, c] = a*(b*c)
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            return tuple(int(x) for x in bad[0])
        return None
    # Light's test: elements b with (x b) y = x (b y) for all x, y are closed
    # under products, so checking a generating set suffices.
    gens: list[int] = []
    reached = _right_closure(table, identity, gens)
    while len(reached) < n:
        g = min(set(range(n)) - reached)
        gens.append(g)
        reached = _right_closure(table, identity, gens)
    for b in gens:
        lhs = table[table[:, b]]  # lhs[x, y] = (x b) y
        rhs = table[:, table[b]]  # rhs[x, y] = x (b y)
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            x, y = (int(v) for v in bad[0])
            return (x, b, y)
    return None


def group_from_cayley(table) -> FiniteGroup:
    """Validate a Cayley table and return the group it defines."""
    arr = np.asarray(table)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise ShapeMismatch("a group table must be a non-empty square array")
    n = arr.shape[0]
    if n > MAX_GROUP_ORDER:
        raise SizeLimitExceeded(f"group order {n} exceeds {MAX_GROUP_ORDER}")
    if not np.issubdtype(arr.dtype, np.integer):
        raise ShapeMismatch("group table entries must be integers")
    arr = arr.astype(np.int64)
    if arr.min() < 0 or arr.max() >= n:
        raise ShapeMismatch(f"group table entries must lie in 0..{n - 1}")

    elems = np.arange(n)
    identity = None
    for e in range(n):
        if np.array_equal(arr[e], elems) and np.array_equal(arr[:, e], elems):
            identity = e
            break
    if identity is None:
        raise NoIdentity()

    inverses = np.empty(n, dtype=np.int64)
    for a in range(n):
        cands = np.flatnonzero((arr[a] == identity) & (arr[:, a] == identity))
        if len(cands) == 0:
            raise NoInverse(a)
        inverses[a] = cands[0]

    witness = _latin_witness(arr, inverses)
    if witness is None:
        witness = _associativity_witness(arr, identity)
    if witness is not None:
        raise NotAssociative(witness)
    return FiniteGroup(order=n, cayley=_frozen(arr), identity=int(identity), inverses=_frozen(inverses))


def _cyclic_table(n: int) -> np.ndarray:
    idx = np.arange(n)
    return (idx[:, None] + idx[None, :]) % n


def _dihedral_table(n: int) -> np.ndarray:
    table = np.empty((2 * n, 2 * n), dtype=np.int64)
    for x in range(2 * n):
        a, fx = x % n, x // n
        for y in range(2 * n):
            b, fy = y % n, y // n
            rot = (a + (b if fx == 0 else -b)) % n
            table[x, y] = rot + n * ((fx + fy) % 2)
    return table


def symmetric_elements(n: int) -> list[tuple[int, ...]]:
    """Permutations of ``range(n)`` in the indexing used by ``symmetric n``."""
    return list(itertools.permutations(range(n)))


def perm_index(images: Sequence[int]) -> int:
    """Index in ``standard_group("symmetric", len(images))`` of a permutation.

    >>> perm_index((1, 0, 2))
    2
    """
    images = tuple(images)
    n = len(images)
    if sorted(images) != list(range(n)):
        raise MultiquandleError(f"{images} is not a permutation of range({n})")
    idx = 0
    rest = list(range(n))
    for i, x in enumerate(images):
        pos = rest.index(x)
        idx += pos * math.factorial(n - 1 - i)
        rest.pop(pos)
    return idx


def transposition(n: int, i: int, j: int) -> int:
    """Index of the transposition swapping points ``i`` and ``j`` (0-based)."""
    images = list(range(n))
    images[i], images[j] = images[j], images[i]
    return perm_index(images)


def _symmetric_table(n: int) -> np.ndarray:
    perms = np.array(symmetric_elements(n), dtype=np.int64).reshape(-1, n)
    m = len(perms)
    # encode each permutation as a base-n integer to look up indices
    weights = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
    codes = perms @ weights
    order = np.argsort(codes)
    composed = perms[:, perms]  # composed[a, b, i] = a[b[i]]
    ccodes = composed @ weights
    table = order[np.searchsorted(codes[order], ccodes)]
    return table.reshape(m, m)


_QUATERNION_NAMES = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")


def _quaternion_table() -> np.ndarray:
    basis_mul = {
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    }

    def split(name):
        return (-1, name[1:]) if name.startswith("-") else (1, name)

    table = np.empty((8, 8), dtype=np.int64)
    for x, nx in enumerate(_QUATERNION_NAMES):
        sx, bx = split(nx)
        for y, ny in enumerate(_QUATERNION_NAMES):
            sy, by = split(ny)
            if bx == "1":
                sign, base = 1, by
            elif by == "1":
                sign, base = 1, bx
            else:
                sign, base = basis_mul[(bx, by)]
            sign *= sx * sy
            name = base if sign > 0 else "-" + base
            table[x, y] = _QUATERNION_NAMES.index(name)
    return table


def standard_group(kind: str, n: int | None = None) -> FiniteGroup:
    """Build a catalog group: ``cyclic``, ``dihedral``, ``symmetric`` or ``quaternion8``."""
    if kind == "quaternion8":
        return group_from_cayley(_quaternion_table())
    if n is None or n < 1:
        raise MultiquandleError(f"{kind} needs a positive size parameter")
    if kind == "cyclic":
        if n > MAX_GROUP_ORDER:
            raise SizeLimitExceeded(f"cyclic group of order {n} exceeds {MAX_GROUP_ORDER}")
        return group_from_cayley(_cyclic_table(n))
    if kind == "dihedral":
        if 2 * n > MAX_GROUP_ORDER:
            raise SizeLimitExceeded(f"dihedral group of order {2 * n} exceeds {MAX_GROUP_ORDER}")
        return group_from_cayley(_dihedral_table(n))
    if kind == "symmetric":
        if n > MAX_SYMMETRIC_DEGREE:
            raise SizeLimitExceeded(f"symmetric groups are limited to degree {MAX_SYMMETRIC_DEGREE}")
        return group_from_cayley(_symmetric_table(n))
    raise MultiquandleError(f"unknown group kind {kind!r}")


# subgroups and cosets


def subgroup_generated(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    gens = sorted({int(g) for g in gens})
    for g in gens:
        if not 0 <= g < G.order:
            raise MultiquandleError(f"generator {g} is not an element of the group")
    # in a finite group the product-closure of gens already contains inverses
    members = _right_closure(np.asarray(G.cayley), G.identity, gens)
    return Subgroup(tuple(members))


def is_subgroup(G: FiniteGroup, members: Iterable[int]) -> bool:
    s = set(int(x) for x in members)
    if G.identity not in s or not all(0 <= x < G.order for x in s):
        return False
    return all(G.mul(a, b) in s for a in s for b in s) and all(G.inv(a) in s for a in s)


def center(G: FiniteGroup, H: Subgroup) -> Subgroup:
    """Z(H): the members of H commuting with every member of H."""
    idx = np.array(H.members, dtype=np.int64)
    block = G.cayley[np.ix_(idx, idx)]
    commuting = np.all(block == block.T, axis=1)
    return Subgroup(tuple(int(x) for x in idx[commuting]))


def left_cosets(G: FiniteGroup, H: Subgroup) -> CosetSpace:
    block_of = [-1] * G.order
    reps: list[int] = []
    for u in range(G.order):
        if block_of[u] >= 0:
            continue
        b = len(reps)
        reps.append(u)
        for h in H.members:
            block_of[G.mul(u, h)] = b
    return CosetSpace(block_count=len(reps), block_of=tuple(block_of), representatives=tuple(reps))


def power(G: FiniteGroup, v: int, k: int) -> int:
    if k < 0:
        v, k = G.inv(v), -k
    result, base = G.identity, v
    while k:
        if k & 1:
            result = G.mul(result, base)
        base = G.mul(base, base)
        k >>= 1
    return result


def element_order(G: FiniteGroup, v: int) -> int:
    k, x = 1, v
    while x != G.identity:
        x = G.mul(x, v)
        k += 1
    return k


def exponent(G: FiniteGroup) -> int:
    return math.lcm(*(element_order(G, v) for v in G.elements()))


def conjugate_subgroup(G: FiniteGroup, H: Subgroup, g: int) -> Subgroup:
    """gHg^-1."""
    gi = G.inv(g)
    return Subgroup(tuple(G.product(g, h, gi) for h in H.members))


def generated_subgroups(G: FiniteGroup, max_gens: int = 2) -> list[Subgroup]:
    """Distinct subgroups generated by at most ``max_gens`` elements, sorted."""
    found = {}
    for r in range(max_gens + 1):
        for gens in itertools.combinations(range(G.order), r):
            H = subgroup_generated(G, gens)
            found.setdefault(H.members, H)
    return [found[k] for k in sorted(found, key=lambda m: (len(m), m))]


# file formats


def group_to_json(G: FiniteGroup) -> str:
    return json.dumps({"order": G.order, "table": G.cayley.tolist()})


def group_from_json(text: str) -> FiniteGroup:
    data = json.loads(text)
    if not isinstance(data, dict) or "order" not in data or "table" not in data:
        raise ShapeMismatch('group file must be an object with keys "order" and "table"')
    G = group_from_cayley(data["table"])
    if G.order != data["order"]:
        raise ShapeMismatch(f"declared order {data['order']} does not match table size {G.order}")
    return G


def subgroup_to_json(H: Subgroup) -> str:
    return json.dumps({"members": list(H.members)})


def subgroup_from_json(text: str, G: FiniteGroup | None = None) -> Subgroup:
    data = json.loads(text)
    if not isinstance(data, dict) or "members" not in data:
        raise ShapeMismatch('subgroup file must be an object with key "members"')
    H = Subgroup(tuple(data["members"]))
    if G is not None and not is_subgroup(G, H.members):
        raise MultiquandleError("members do not form a subgroup of the given group")
    return H
