"""Automorphism groups by backtracking over generator images, and the
orbit conditions built on them."""

from __future__ import annotations

import math
import weakref
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import BudgetExceeded, NotNormal
from .groups import GroupTable, is_normal_subgroup, quotient

DEFAULT_AUT_BUDGET = 10**9
MAX_AUT_ENTRIES = 10**8

_AUTS: "weakref.WeakKeyDictionary[GroupTable, AutSet]" = weakref.WeakKeyDictionary()


@dataclass(frozen=True, eq=False)
class AutSet:
    """All automorphisms of ``group`` as rows of element-index permutations."""

    group: GroupTable
    maps: np.ndarray

    def __len__(self) -> int:
        return self.maps.shape[0]

    @property
    def orbit_of(self) -> np.ndarray:
        # the maps form a group, so column x lists the whole orbit of x
        return self.maps.min(axis=0)

    @property
    def orbits(self) -> list:
        lab = self.orbit_of
        return [frozenset(np.flatnonzero(lab == o).tolist()) for o in np.unique(lab)]


def _candidates(G: GroupTable) -> list:
    sizes = np.asarray(G.classes.sizes)[G.classes.class_of]
    out = []
    for g in G.gens:
        mask = (G.orders == G.orders[g]) & (sizes == sizes[g])
        out.append(np.flatnonzero(mask))
    return out


def automorphism_group(G: GroupTable, budget: int = DEFAULT_AUT_BUDGET) -> AutSet:
    """Every automorphism of ``G``.

    Generator images are restricted to elements with the generator's order
    and class size, and each partial assignment must reproduce the orders
    of ``g_j * g_i`` and ``g_j^-1 * g_i`` for earlier generators. Complete
    assignments are extended along the canonical-word tree and verified.
    """
    cached = _AUTS.get(G)
    if cached is not None:
        return cached
    n = G.n
    gens = np.asarray(G.gens, np.int64)
    if gens.size == 0:
        aut = AutSet(G, np.arange(n, dtype=np.int64)[None, :])
        _AUTS[G] = aut
        return aut
    cands = _candidates(G)
    estimate = math.prod(len(c) for c in cands) * n * len(gens)
    if estimate > budget:
        raise BudgetExceeded(f"automorphism search estimate {estimate} exceeds budget {budget}",
                             estimate=estimate, budget=budget)
    orders, mul, inv = G.orders, G.mul, G.inv
    target_prod = [[int(orders[mul[gens[j], gens[i]]]) for j in range(i)] for i in range(len(gens))]
    target_quot = [[int(orders[mul[inv[gens[j]], gens[i]]]) for j in range(i)] for i in range(len(gens))]
    order, parent, pgen, level_ptr = G.tree_order, G.tree_parent, G.tree_gen, G.tree_level_ptr
    found = []
    images = np.zeros(len(gens), np.int64)

    def rec(i):
        c = cands[i]
        for j in range(i):
            c = c[(orders[mul[images[j], c]] == target_prod[i][j])
                  & (orders[mul[inv[images[j]], c]] == target_quot[i][j])]
        for y in c:
            images[i] = y
            if i + 1 < len(gens):
                rec(i + 1)
            else:
                phi = kernels.extend_homomorphism(mul, order, parent, pgen, level_ptr, gens, images)
                if phi[0] != -1:
                    found.append(phi.copy())
                    if len(found) * n > MAX_AUT_ENTRIES:
                        raise BudgetExceeded("automorphism storage exceeds memory guard",
                                             estimate=len(found) * n, budget=MAX_AUT_ENTRIES)

    rec(0)
    maps = np.asarray(found, np.int64)
    maps.setflags(write=False)
    aut = AutSet(G, maps)
    _AUTS[G] = aut
    return aut


@dataclass(frozen=True)
class AVResult:
    holds: bool
    witness: tuple | None = None  # (g, h) with <g> = <h> in different orbits

    def __bool__(self) -> bool:
        return self.holds


def amit_vishne_check(G: GroupTable, budget: int = DEFAULT_AUT_BUDGET) -> AVResult:
    """Whether elements generating the same cyclic subgroup always share an Aut-orbit."""
    lab = automorphism_group(G, budget).orbit_of
    for part in G.partition.parts:
        members = sorted(part)
        g = members[0]
        for h in members[1:]:
            if lab[h] != lab[g]:
                return AVResult(False, (g, h))
    return AVResult(True)


def absolute_center(G: GroupTable, budget: int = DEFAULT_AUT_BUDGET) -> frozenset:
    """Elements fixed by every automorphism."""
    maps = automorphism_group(G, budget).maps
    return frozenset(np.flatnonzero((maps == np.arange(G.n)).all(axis=0)).tolist())


def ori_condition_check(G: GroupTable, N, budget: int = DEFAULT_AUT_BUDGET) -> dict:
    """Test ``gN`` inside the Aut-orbit of ``g`` for all ``g`` outside ``N``.

    Also reports whether each generator-equivalence part inside ``N`` lies
    in a single Aut-orbit, and whether ``G/N`` is abelian.
    """
    N = frozenset(int(x) for x in N)
    if not is_normal_subgroup(G, N):
        raise NotNormal("subgroup is not normal (or not a subgroup)")
    lab = automorphism_group(G, budget).orbit_of
    narr = np.asarray(sorted(N), np.int64)
    inside = np.zeros(G.n, bool)
    inside[narr] = True
    outside = np.flatnonzero(~inside)
    coset_orbits = lab[G.mul[np.ix_(outside, narr)]]
    bad = outside[(coset_orbits != lab[outside][:, None]).any(axis=1)]
    part_ok = []
    for part in G.partition.parts:
        g = min(part)
        if inside[g]:
            part_ok.append((g, len({int(lab[x]) for x in part}) == 1))
    H, _ = quotient(G, N)
    return {
        "normal_order": len(N),
        "coset_condition": bad.size == 0,
        "coset_violations": bad[:20].tolist(),
        "parts_in_single_orbit": all(ok for _, ok in part_ok),
        "part_violations": [g for g, ok in part_ok if not ok][:20],
        "quotient_order": H.n,
        "quotient_abelian": H.is_abelian,
    }
