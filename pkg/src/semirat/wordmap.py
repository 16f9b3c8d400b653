"""Exact word-map distributions ``N_w(g) = #{tuples : w(tuple) = g}``."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import BudgetExceeded, OverflowGuard
from .groups import GroupTable, quotient
from .words import Word

DEFAULT_BUDGET = 10**9
NAIVE_LIMIT = 10**7


@dataclass(frozen=True, eq=False)
class ClassFunction:
    """Exact values (ints or Fractions), one per conjugacy class of ``group``."""

    group: GroupTable
    values: tuple

    def __getitem__(self, k: int):
        return self.values[k]

    def __len__(self) -> int:
        return len(self.values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.group is other.group and self.values == other.values

    def at(self, x: int):
        """Value at element index ``x``."""
        return self.values[int(self.group.classes.class_of[x])]

    def per_element(self) -> np.ndarray:
        return np.asarray(self.values, dtype=object)[self.group.classes.class_of]

    def total_mass(self):
        return sum(s * v for s, v in zip(self.group.classes.sizes, self.values))

    def scaled(self, c) -> "ClassFunction":
        return ClassFunction(self.group, tuple(c * v for v in self.values))


def _check_rank(G: GroupTable, w: Word, rank: int | None) -> int:
    r = max(w.rank, rank or 0)
    if G.n ** r >= 2**63:
        raise OverflowGuard(f"|G|^r = {G.n}^{r} does not fit the 63-bit counters")
    return r


def estimate_cost(G: GroupTable, w: Word) -> int:
    """Elementary multiplications spent by ``distribution``."""
    u = len(w.variables)
    if u == 0:
        return 0
    return G.classes.count * G.n ** (u - 1) * len(w.letters)


def distribution(G: GroupTable, w: Word, rank: int | None = None,
                 budget: int = DEFAULT_BUDGET, threads: int = 1) -> ClassFunction:
    """``N_w`` on ``G`` with the first used variable pinned to class representatives.

    Simultaneous conjugation of a tuple maps the fiber over ``g`` onto the
    fiber over a conjugate of ``g``, so counting with the first variable
    running over representatives and weighting by class size gives the
    exact per-class totals. Variables counted in ``rank`` but absent from
    the word contribute a factor ``|G|`` each.
    """
    r = _check_rank(G, w, rank)
    cls = G.classes
    used = w.variables
    if len(used) > 3:
        raise BudgetExceeded(f"word uses {len(used)} variables; at most 3 are supported")
    cost = estimate_cost(G, w)
    if cost > budget:
        raise BudgetExceeded(f"estimated {cost} multiplications exceeds budget {budget}",
                             estimate=cost, budget=budget)
    scale = G.n ** (r - len(used))
    if not used:
        vals = [0] * cls.count
        vals[0] = scale
        return ClassFunction(G, tuple(vals))

    slot = {v: i for i, v in enumerate(used)}
    exps = sorted({e for _, e in w.letters})
    row = {e: i for i, e in enumerate(exps)}
    powtab = np.stack([G.power_all(e) for e in exps]).astype(np.int32)
    syl_slot = np.array([slot[v] for v, _ in w.letters], np.int64)
    syl_row = np.array([row[e] for _, e in w.letters], np.int64)
    nfree = len(used) - 1

    reps = np.asarray(cls.reps, np.int64)
    shards = [s for s in np.array_split(np.arange(len(reps)), max(1, threads)) if s.size]

    def run(idx):
        counts = kernels.count_word_images(G.mul, reps[idx], syl_slot, syl_row, powtab, nfree)
        return (np.asarray(cls.sizes, np.int64)[idx, None] * counts).sum(axis=0)

    if len(shards) == 1:
        weighted = run(shards[0])
    else:
        with ThreadPoolExecutor(max_workers=len(shards)) as pool:
            weighted = sum(pool.map(run, shards))
    agg = np.zeros(cls.count, np.int64)
    np.add.at(agg, cls.class_of, weighted)
    values = []
    for total, size in zip(agg.tolist(), cls.sizes):
        q, rem = divmod(total, size)
        if rem:
            raise AssertionError("class totals not divisible by class size")
        values.append(q * scale)
    return ClassFunction(G, tuple(values))


def naive_element_counts(G: GroupTable, w: Word, rank: int | None = None) -> np.ndarray:
    """Per-element solution counts by direct enumeration of all of ``G^r``."""
    r = _check_rank(G, w, rank)
    if G.n ** r > NAIVE_LIMIT:
        raise BudgetExceeded(f"naive enumeration of {G.n}^{r} tuples exceeds {NAIVE_LIMIT}",
                             estimate=G.n ** r, budget=NAIVE_LIMIT)
    if r == 0:
        out = np.zeros(G.n, np.int64)
        out[0] = 1
        return out
    grids = np.meshgrid(*([np.arange(G.n)] * r), indexing="ij")
    assign = [g.ravel() for g in grids]
    acc = np.zeros(G.n ** r, np.int64)
    for v, e in w.letters:
        x = assign[v - 1] if e > 0 else G.inv[assign[v - 1]]
        for _ in range(abs(e)):
            acc = G.mul[acc, x]
    return np.bincount(acc, minlength=G.n).astype(np.int64)


def naive_distribution(G: GroupTable, w: Word, rank: int | None = None) -> ClassFunction:
    """Oracle for ``distribution``: no class reduction, no power tables."""
    counts = naive_element_counts(G, w, rank)
    cls = G.classes
    values = []
    for members in cls.members:
        vals = np.unique(counts[members])
        if vals.size != 1:
            raise AssertionError("naive counts are not constant on a conjugacy class")
        values.append(int(vals[0]))
    return ClassFunction(G, tuple(values))


def quotient_identity_check(G: GroupTable, N, w: Word, rank: int | None = None,
                            budget: int = DEFAULT_BUDGET) -> dict:
    """Check ``sum_{y in gN} N_{w,G}(y) = |N|^r N_{w,G/N}(gN)`` on every coset."""
    r = max(w.rank, rank or 0)
    H, proj = quotient(G, N)
    nG = distribution(G, w, r, budget=budget).per_element()
    nH = distribution(H, w, r, budget=budget).per_element()
    lhs = [0] * H.n
    for y in range(G.n):
        lhs[int(proj[y])] += int(nG[y])
    size = len(N)
    residuals = [lhs[c] - size**r * int(nH[c]) for c in range(H.n)]
    return {
        "cosets": H.n,
        "normal_order": size,
        "rank": r,
        "residuals": residuals,
        "ok": all(x == 0 for x in residuals),
    }
