"""Multi-racks and multi-quandles built from finite groups.

Label conventions: ``trivial`` for the trivial quandle, ``t:<a>`` for the
Alexander map ``x -> a*x``, ``n:<k>`` for conjugation powers, ``g:<s>`` for
the conjugation multi-rack and ``coset-s:<s>`` for coset multi-quandles,
where ``<s>`` is a group element index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    NotAutomorphism,
    NotCommuting,
    NotInvertible,
    SNotInCenter,
    WellDefinednessFailure,
)
from .groups import (
    FiniteGroup,
    Subgroup,
    center,
    conjugate_subgroup,
    exponent,
    left_cosets,
    power,
    standard_group,
)
from .multirack import MorphismWitness, MultiRack, _trusted, multirack_from_tables


def _build(order, labels, tables, quandle: bool, check: bool) -> MultiRack:
    if check:
        return multirack_from_tables(order, labels, tables, require_quandle=quandle)
    return _trusted(order, labels, tables)


def trivial_quandle(m: int) -> MultiRack:
    """``u |> v = u`` on ``m`` points."""
    if m < 1:
        raise ValueError("the trivial quandle needs at least one element")
    table = np.repeat(np.arange(m)[:, None], m, axis=1)
    return _build(m, ["trivial"], {"trivial": table}, quandle=True, check=True)


@dataclass(frozen=True)
class AutomorphismFamily:
    """A group together with labeled permutations meant to be commuting automorphisms."""

    group: FiniteGroup
    maps: tuple[tuple[str, tuple[int, ...]], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "maps", tuple((str(s), tuple(int(x) for x in f)) for s, f in self.maps)
        )


def _check_family(fam: AutomorphismFamily):
    G = fam.group
    C = G.cayley
    for s, f in fam.maps:
        f = np.asarray(f, dtype=np.int64)
        if len(f) != G.order or f.min() < 0 or f.max() >= G.order:
            raise NotAutomorphism(s, ())
        if len(set(f.tolist())) != G.order:
            seen = {}
            for a, x in enumerate(f.tolist()):
                if x in seen:
                    raise NotAutomorphism(s, (seen[x], a))
                seen[x] = a
        bad = np.argwhere(f[C] != C[f[:, None], f[None, :]])
        if len(bad):
            raise NotAutomorphism(s, tuple(int(x) for x in bad[0]))
    for i, (s, f) in enumerate(fam.maps):
        for t, g in fam.maps[i + 1:]:
            for a in range(G.order):
                if f[g[a]] != g[f[a]]:
                    raise NotCommuting((s, t), a)


def automorphism_multiquandle(fam: AutomorphismFamily, check: bool = True) -> MultiRack:
    """``u |>_s v = f_s(u v^-1) v`` for each labeled automorphism ``f_s``."""
    _check_family(fam)
    G = fam.group
    C = G.cayley
    udiv = C[:, G.inverses]  # udiv[u, v] = u v^-1
    cols = np.arange(G.order)[None, :]
    tables = {}
    for s, f in fam.maps:
        f = np.asarray(f, dtype=np.int64)
        tables[s] = C[f[udiv], cols]
    labels = [s for s, _ in fam.maps]
    return _build(G.order, labels, tables, quandle=True, check=check)


def alexander_family(modulus: int, units: Iterable[int]) -> AutomorphismFamily:
    """``Z/modulus`` with multiplication by each unit, labeled ``t:<unit mod modulus>``."""
    G = standard_group("cyclic", modulus)
    maps = []
    seen = set()
    for a in units:
        if math.gcd(a, modulus) != 1:
            raise NotInvertible(a, modulus)
        r = a % modulus
        if r in seen:
            continue
        seen.add(r)
        maps.append((f"t:{r}", tuple((r * x) % modulus for x in range(modulus))))
    return AutomorphismFamily(G, tuple(maps))


def dihedral_quandle(n: int) -> MultiRack:
    """``R_n``: ``u |> v = 2v - u mod n``, the Alexander quandle with unit -1."""
    return automorphism_multiquandle(alexander_family(n, [-1]))


def conjugation_power_multiquandle(
    G: FiniteGroup, powers: Iterable[int] | None = None, check: bool = True
) -> MultiRack:
    """``u |>_n v = v^-n u v^n``, with ``n`` reduced modulo the group exponent."""
    e = exponent(G)
    residues = range(e) if powers is None else sorted({p % e for p in powers})
    C = G.cayley
    tables = {}
    labels = []
    for k in residues:
        vk = np.array([power(G, v, k) for v in G.elements()], dtype=np.int64)
        vmk = G.inverses[vk]
        left = C[vmk[None, :], np.arange(G.order)[:, None]]  # v^-k u, indexed [u, v]
        tables[f"n:{k}"] = C[left, vk[None, :]]
        labels.append(f"n:{k}")
    return _build(G.order, labels, tables, quandle=True, check=check)


def _conjugates(G: FiniteGroup) -> np.ndarray:
    """``conj[v, s] = v s v^-1``."""
    C = G.cayley
    return C[C, G.inverses[:, None]]


def conjugation_multirack(G: FiniteGroup, check: bool = True) -> MultiRack:
    """``u |>_s v = v s v^-1 u`` with one operation per group element ``s``."""
    C = G.cayley
    conj = _conjugates(G)
    rows = np.arange(G.order)[:, None]
    tables = {f"g:{s}": C[conj[:, s][None, :], rows] for s in G.elements()}
    return _build(G.order, list(tables), tables, quandle=False, check=check)


def coset_label(s: int) -> str:
    return f"coset-s:{s}"


def coset_multiquandle(
    G: FiniteGroup,
    H: Subgroup,
    chosen: Iterable[int] | None = None,
    enforce_center: bool = True,
    check: bool = True,
) -> MultiRack:
    """The induced operations ``uH |>_s vH = (v s v^-1 u)H`` on left cosets, ``s`` in Z(H).

    Carrier element ``b`` is the coset of ``left_cosets(G, H).representatives[b]``.
    Independence of the chosen representatives is checked on every pair of
    group elements before the structure is returned.  ``enforce_center=False``
    skips the center test so that this check can be exercised on bad ``s``.
    """
    Z = center(G, H)
    chosen = list(Z.members) if chosen is None else [int(s) for s in chosen]
    if enforce_center:
        for s in chosen:
            if s not in Z:
                raise SNotInCenter(s)
    cosets = left_cosets(G, H)
    block = np.array(cosets.block_of, dtype=np.int64)
    reps = np.array(cosets.representatives, dtype=np.int64)
    C = G.cayley
    conj = _conjugates(G)
    rows = np.arange(G.order)[:, None]
    tables = {}
    for s in chosen:
        full = block[C[conj[:, s][None, :], rows]]  # p(x |>_s y) for all x, y in G
        induced = full[np.ix_(reps, reps)]
        bad = np.argwhere(full != induced[block[:, None], block[None, :]])
        if len(bad):
            x, y = (int(t) for t in bad[0])
            u, v = int(reps[block[x]]), int(reps[block[y]])
            raise WellDefinednessFailure((s, u, v, G.mul(G.inv(u), x), G.mul(G.inv(v), y)))
        tables[coset_label(s)] = induced
    labels = [coset_label(s) for s in chosen]
    return _build(cosets.block_count, labels, tables, quandle=enforce_center, check=check)


def conjugate_coset_isomorphism(G: FiniteGroup, H: Subgroup, g: int) -> MorphismWitness:
    """Isomorphism ``Q(G, H) -> Q(G, gHg^-1)``: ``uH -> (u g^-1) gHg^-1``, ``s -> g s g^-1``.

    Both sides use the full operation family indexed by the respective centers.
    """
    K = conjugate_subgroup(G, H, g)
    src, dst = left_cosets(G, H), left_cosets(G, K)
    gi = G.inv(g)
    element_map = tuple(dst.block_of[G.mul(u, gi)] for u in src.representatives)
    label_map = {coset_label(s): coset_label(G.product(g, s, gi)) for s in center(G, H).members}
    return MorphismWitness(element_map, label_map)


def catalog_groups() -> list[tuple[str, FiniteGroup]]:
    """The groups used for exhaustive sweeps."""
    out = [(f"C{n}", standard_group("cyclic", n)) for n in range(1, 13)]
    out += [(f"D{n}", standard_group("dihedral", n)) for n in range(1, 7)]
    out += [("S3", standard_group("symmetric", 3)), ("S4", standard_group("symmetric", 4))]
    out.append(("Q8", standard_group("quaternion8")))
    return out
