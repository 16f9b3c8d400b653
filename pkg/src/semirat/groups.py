"""Finite groups as dense multiplication tables over indices ``0..n-1``.

Index 0 is always the identity. Groups built from a presentation are
indexed by breadth-first closure from their generator sequence, so every
element carries a canonical word in the generators and those words are
prefix-closed (``word(x) = word(parent(x)) + [generator]``).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property, reduce
from pathlib import Path

import numpy as np
from sympy import isprime, n_order

from . import kernels
from .errors import CeilingExceeded, FileFormatError, InvalidSpec, NotNormal

DEFAULT_CEILING = 5000

_KINDS = {
    "cyclic": 1,
    "metacyclic": 3,
    "gp": 1,
    "cpqm": 3,
    "psl2": 1,
    "pgl2": 1,
}


@dataclass(frozen=True)
class GroupSpec:
    """A group description such as ``metacyclic:7,9,2`` or ``psl2:11``."""

    kind: str
    args: tuple = ()

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        kind, sep, rest = text.strip().partition(":")
        kind = kind.strip().lower()
        if not sep:
            raise InvalidSpec(f"group spec {text!r} must look like kind:args")
        if kind == "cayley":
            if not rest:
                raise InvalidSpec("cayley spec needs a path")
            return cls("cayley", (rest,))
        if kind not in _KINDS:
            raise InvalidSpec(f"unknown group kind {kind!r}")
        try:
            args = tuple(int(a) for a in rest.split(","))
        except ValueError:
            raise InvalidSpec(f"non-integer parameter in {text!r}") from None
        if len(args) != _KINDS[kind]:
            raise InvalidSpec(f"{kind} takes {_KINDS[kind]} parameter(s), got {len(args)}")
        return cls(kind, args)

    def __str__(self) -> str:
        return f"{self.kind}:{','.join(str(a) for a in self.args)}"

    def order(self) -> int | None:
        """Group order implied by the spec, without building it."""
        a = self.args
        if self.kind == "cyclic":
            return a[0]
        if self.kind == "metacyclic":
            return a[0] * a[1]
        if self.kind == "gp":
            return a[0] * (a[0] - 1)
        if self.kind == "cpqm":
            return a[0] * a[1] ** a[2]
        if self.kind == "psl2":
            return a[0] * (a[0] ** 2 - 1) // 2
        if self.kind == "pgl2":
            return a[0] * (a[0] ** 2 - 1)
        return None

    def resolved(self) -> "GroupSpec":
        """Rewrite ``gp`` / ``cpqm`` / ``cyclic`` as the metacyclic spec actually built."""
        validate(self)
        a = self.args
        if self.kind == "cyclic":
            return GroupSpec("metacyclic", (a[0], 1, 1))
        if self.kind == "gp":
            return GroupSpec("metacyclic", (a[0], a[0] - 1, smallest_of_order(a[0], a[0] - 1)))
        if self.kind == "cpqm":
            p, q, m = a
            return GroupSpec("metacyclic", (p, q ** m, smallest_of_order(p, q)))
        return self


def smallest_of_order(p: int, d: int) -> int:
    """Smallest ``k`` in ``1..p-1`` whose multiplicative order mod ``p`` is ``d``."""
    for k in range(1, p):
        if math.gcd(k, p) == 1 and n_order(k, p) == d:
            return k
    raise InvalidSpec(f"no unit of order {d} modulo {p}")


def validate(spec: GroupSpec) -> None:
    a = spec.args
    kind = spec.kind
    if kind == "cyclic":
        if a[0] < 1:
            raise InvalidSpec("cyclic order must be >= 1")
    elif kind == "metacyclic":
        n, m, k = a
        if n < 1 or m < 1:
            raise InvalidSpec("metacyclic n, m must be >= 1")
        if math.gcd(k, n) != 1:
            raise InvalidSpec(f"gcd(k, n) = gcd({k}, {n}) != 1")
        if pow(k, m, n) != 1 % n:
            raise InvalidSpec(f"k^m = {k}^{m} is not 1 mod {n}")
    elif kind == "gp":
        if not (a[0] >= 3 and isprime(a[0])):
            raise InvalidSpec("gp needs a prime p >= 3")
    elif kind == "cpqm":
        p, q, m = a
        if not (p > 2 and q > 2 and isprime(p) and isprime(q)):
            raise InvalidSpec("cpqm needs odd primes p, q")
        if p % q != 1:
            raise InvalidSpec(f"cpqm needs p = 1 mod q, got p={p}, q={q}")
        if m < 1:
            raise InvalidSpec("cpqm needs m >= 1")
    elif kind in ("psl2", "pgl2"):
        if not (a[0] >= 5 and isprime(a[0])):
            raise InvalidSpec(f"{kind} needs a prime p >= 5")
    elif kind != "cayley":
        raise InvalidSpec(f"unknown group kind {kind!r}")


# ---------------------------------------------------------------------------
# derived partitions


@dataclass(frozen=True, eq=False)
class ConjClasses:
    class_of: np.ndarray
    reps: tuple
    sizes: tuple
    members: tuple = field(repr=False)

    @property
    def count(self) -> int:
        return len(self.reps)


@dataclass(frozen=True, eq=False)
class GenEquivPartition:
    """Elements grouped by the cyclic subgroup they generate."""

    part_of: np.ndarray
    parts: tuple


class GroupTable:
    """Finite group with a dense multiplication table.

    ``mul[x, y]`` is the index of ``x*y``. Treat instances as immutable;
    invariants are computed lazily and cached.
    """

    def __init__(self, mul, gens, labels=None, named=None, name: str = "G"):
        mul = np.ascontiguousarray(mul, dtype=np.int32)
        self.mul = mul
        self.mul.setflags(write=False)
        self.n = mul.shape[0]
        self.identity = 0
        self.gens = tuple(int(g) for g in gens)
        self.name = name
        self.named = dict(named or {})
        self._labels = labels
        inv = np.argmin(mul, axis=1).astype(np.int32)  # row x has 0 exactly once, at inv(x)
        self.inv = inv
        self.inv.setflags(write=False)
        self._build_tree()

    def __repr__(self) -> str:
        return f"GroupTable({self.name}, order={self.n})"

    def __len__(self) -> int:
        return self.n

    # spanning tree of canonical words -------------------------------------
    def _build_tree(self) -> None:
        n = self.n
        parent = np.full(n, -1, np.int64)
        pgen = np.full(n, -1, np.int64)
        depth = np.full(n, -1, np.int64)
        depth[0] = 0
        order = [0]
        mul = self.mul
        head = 0
        while head < len(order):
            x = order[head]
            head += 1
            for j, g in enumerate(self.gens):
                y = int(mul[x, g])
                if depth[y] < 0:
                    depth[y] = depth[x] + 1
                    parent[y] = x
                    pgen[y] = j
                    order.append(y)
        if len(order) != n:
            raise InvalidSpec(f"generators span only {len(order)} of {n} elements")
        self.tree_order = np.asarray(order, np.int64)
        self.tree_parent = parent
        self.tree_gen = pgen
        d = depth[self.tree_order]
        self.tree_level_ptr = np.concatenate(([0], np.flatnonzero(np.diff(d)) + 1, [n]))

    def elem_word(self, x: int) -> tuple:
        """Canonical word of ``x`` as a tuple of positions into ``gens``."""
        out = []
        while x != 0:
            out.append(int(self.tree_gen[x]))
            x = int(self.tree_parent[x])
        return tuple(reversed(out))

    @property
    def labels(self) -> list:
        return [self.label(x) for x in range(self.n)]

    def label(self, x: int) -> str:
        """Element name: explicit label, else its canonical word in named generators."""
        if self._labels is not None:
            return self._labels[x]
        names = {g: k for k, g in self.named.items()}
        if x == 0 or len(names) != len(self.gens):
            return str(x) if x else "1"
        runs: list[list] = []
        for j in self.elem_word(x):
            if runs and runs[-1][0] == j:
                runs[-1][1] += 1
            else:
                runs.append([j, 1])
        return "*".join(names[self.gens[j]] + (f"^{k}" if k > 1 else "") for j, k in runs)

    # arithmetic -------------------------------------------------------------
    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = int(self.inv[x]), -k
        acc, base = 0, int(x)
        while k:
            if k & 1:
                acc = int(self.mul[acc, base])
            base = int(self.mul[base, base])
            k >>= 1
        return acc

    def power_all(self, k: int) -> np.ndarray:
        """Array whose entry ``x`` is ``x**k``."""
        base = np.arange(self.n, dtype=np.int32)
        if k < 0:
            base = self.inv.copy()
            k = -k
        acc = np.zeros(self.n, np.int32)
        while k:
            if k & 1:
                acc = self.mul[acc, base]
            base = self.mul[base, base]
            k >>= 1
        return acc

    def conjugate(self, x: int, y: int) -> int:
        """``y^-1 x y``."""
        return int(self.mul[self.mul[self.inv[y], x], y])

    # invariants -------------------------------------------------------------
    @cached_property
    def orders(self) -> np.ndarray:
        n = self.n
        orders = np.zeros(n, np.int64)
        cur = np.arange(n, dtype=np.int32)
        ar = np.arange(n, dtype=np.int32)
        d = 1
        while True:
            hit = (cur == 0) & (orders == 0)
            orders[hit] = d
            if orders.all():
                break
            cur = self.mul[cur, ar]
            d += 1
        orders.setflags(write=False)
        return orders

    @cached_property
    def exponent(self) -> int:
        return int(reduce(math.lcm, (int(o) for o in np.unique(self.orders)), 1))

    @cached_property
    def classes(self) -> ConjClasses:
        n = self.n
        mul, inv = self.mul, self.inv
        raw = np.full(n, -1, np.int64)
        orbits = []
        gens = np.asarray(self.gens, np.int64)
        for x in range(n):
            if raw[x] >= 0:
                continue
            cid = len(orbits)
            raw[x] = cid
            members = [x]
            frontier = np.array([x])
            while frontier.size:
                # g^-1 y g for every frontier y and every generator g
                conj = mul[mul[inv[gens][:, None], frontier[None, :]], gens[:, None]].ravel()
                conj = np.unique(conj)
                conj = conj[raw[conj] < 0]
                raw[conj] = cid
                members.extend(conj.tolist())
                frontier = conj
            orbits.append(np.sort(np.asarray(members, np.int64)))
        keyed = sorted(range(len(orbits)),
                       key=lambda c: (len(orbits[c]), int(self.orders[orbits[c][0]]), int(orbits[c][0])))
        remap = np.empty(len(orbits), np.int64)
        remap[keyed] = np.arange(len(orbits))
        class_of = remap[raw]
        class_of.setflags(write=False)
        members = tuple(orbits[c] for c in keyed)
        return ConjClasses(
            class_of=class_of,
            reps=tuple(int(m[0]) for m in members),
            sizes=tuple(len(m) for m in members),
            members=members,
        )

    @cached_property
    def partition(self) -> GenEquivPartition:
        n = self.n
        part_of = np.full(n, -1, np.int64)
        parts = []
        for x in range(n):
            if part_of[x] >= 0:
                continue
            o = int(self.orders[x])
            elems = []
            p = 0
            for k in range(1, o + 1):
                p = int(self.mul[p, x])
                if math.gcd(k, o) == 1:
                    elems.append(p)
            part_of[elems] = len(parts)
            parts.append(frozenset(elems))
        part_of.setflags(write=False)
        return GenEquivPartition(part_of=part_of, parts=tuple(parts))

    @cached_property
    def center(self) -> frozenset:
        return frozenset(np.flatnonzero((self.mul == self.mul.T).all(axis=1)).tolist())

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.mul == self.mul.T).all())

    def verify_axioms(self, exhaustive_limit: int = 200, samples: int = 100_000, seed: int = 0) -> None:
        """Raise ``FileFormatError`` unless the table is a group with identity 0."""
        n = self.n
        ar = np.arange(n)
        if not (np.array_equal(self.mul[0], ar) and np.array_equal(self.mul[:, 0], ar)):
            raise FileFormatError("index 0 is not a two-sided identity")
        if not np.array_equal(np.sort(self.mul, axis=1), np.broadcast_to(ar, (n, n))):
            raise FileFormatError("a row of the table is not a permutation")
        if not np.array_equal(np.sort(self.mul, axis=0), np.broadcast_to(ar[:, None], (n, n))):
            raise FileFormatError("a column of the table is not a permutation")
        if not (self.mul[ar, self.inv] == 0).all() or not (self.mul[self.inv, ar] == 0).all():
            raise FileFormatError("inverse law fails")
        if n <= exhaustive_limit:
            bad = kernels.associativity_violations(self.mul, rows=ar)
        else:
            rng = np.random.default_rng(seed)
            bad = kernels.associativity_violations(self.mul, triples=rng.integers(0, n, size=(samples, 3)))
        if bad:
            raise FileFormatError(f"associativity fails on {bad} checked triple(s)")


# ---------------------------------------------------------------------------
# operations


def conjugacy_classes(G: GroupTable) -> ConjClasses:
    return G.classes


def element_order(G: GroupTable, x: int) -> int:
    return int(G.orders[x])


def generator_partition(G: GroupTable) -> GenEquivPartition:
    return G.partition


def center(G: GroupTable) -> frozenset:
    return G.center


def exponent(G: GroupTable) -> int:
    return G.exponent


def subgroup_generated(G: GroupTable, elems) -> frozenset:
    """Closure of ``elems`` under multiplication (finite, so also inverses)."""
    elems = np.unique(np.asarray(list(elems), np.int64))
    seen = np.zeros(G.n, bool)
    seen[0] = True
    frontier = np.array([0])
    while frontier.size and elems.size:
        nxt = np.unique(G.mul[frontier[:, None], elems[None, :]].ravel())
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = nxt
    return frozenset(np.flatnonzero(seen).tolist())


def normal_closure(G: GroupTable, elems) -> frozenset:
    """Smallest normal subgroup containing ``elems``."""
    elems = np.asarray(list(elems), np.int64)
    if elems.size == 0:
        return frozenset({0})
    ar = np.arange(G.n)
    conj = G.mul[G.mul[G.inv[ar][:, None], elems[None, :]], ar[:, None]]
    return subgroup_generated(G, np.unique(conj))


def is_normal_subgroup(G: GroupTable, N) -> bool:
    N = frozenset(int(x) for x in N)
    if 0 not in N or subgroup_generated(G, N) != N:
        return False
    arr = np.asarray(sorted(N), np.int64)
    mask = np.zeros(G.n, bool)
    mask[arr] = True
    for g in G.gens:
        if not mask[G.mul[G.mul[G.inv[g], arr], g]].all():
            return False
    return True


def cosets(G: GroupTable, N) -> np.ndarray:
    """Label every element by the smallest element of its coset ``xN``."""
    arr = np.asarray(sorted(int(x) for x in N), np.int64)
    return G.mul[:, arr].min(axis=1).astype(np.int64)


def quotient(G: GroupTable, N) -> tuple[GroupTable, np.ndarray]:
    """Return ``(G/N, projection)`` with ``projection[x]`` the coset index of ``x``."""
    if not is_normal_subgroup(G, N):
        raise NotNormal("subgroup is not normal (or not a subgroup)")
    label = cosets(G, N)
    reps = np.unique(label)
    pos = np.full(G.n, -1, np.int64)
    pos[reps] = np.arange(len(reps))
    raw_proj = pos[label]
    raw = raw_proj[G.mul[np.ix_(reps, reps)]]
    raw_gens = []
    for g in G.gens:
        c = int(raw_proj[g])
        if c != raw_proj[0] and c not in raw_gens:
            raw_gens.append(c)
    # identity coset is the one containing 0, which is reps[0] == 0
    table, new_of_raw, new_gens = _bfs_reindex(raw, raw_gens)
    H = GroupTable(table, new_gens, name=f"{G.name}/N")
    return H, new_of_raw[raw_proj]


# ---------------------------------------------------------------------------
# builders


def _bfs_reindex(raw: np.ndarray, raw_gens) -> tuple[np.ndarray, np.ndarray, list]:
    """Reindex a table with identity at raw index 0 by breadth-first closure."""
    n = raw.shape[0]
    new_of_raw = np.full(n, -1, np.int64)
    new_of_raw[0] = 0
    order = [0]
    head = 0
    while head < len(order):
        x = order[head]
        head += 1
        for g in raw_gens:
            y = int(raw[x, g])
            if new_of_raw[y] < 0:
                new_of_raw[y] = len(order)
                order.append(y)
    if len(order) != n:
        raise InvalidSpec(f"generators span only {len(order)} of {n} elements")
    order = np.asarray(order, np.int64)
    table = new_of_raw[raw[np.ix_(order, order)]]
    return table, new_of_raw, [int(new_of_raw[g]) for g in raw_gens]


def _metacyclic(n: int, m: int, k: int, name: str) -> GroupTable:
    # raw index a*n + b  <->  s^a t^b ;  (s^a t^b)(s^c t^d) = s^(a+c) t^(b k^c + d)
    N = n * m
    A = np.arange(N, dtype=np.int64) // n
    B = np.arange(N, dtype=np.int64) % n
    kpow = np.array([pow(k, a, n) for a in range(m)], dtype=np.int64)
    raw = np.empty((N, N), np.int64)
    step = max(1, 4_000_000 // max(N, 1))
    for lo in range(0, N, step):
        hi = min(N, lo + step)
        a1, b1 = A[lo:hi, None], B[lo:hi, None]
        raw[lo:hi] = ((a1 + A[None, :]) % m) * n + (b1 * kpow[A][None, :] + B[None, :]) % n
    s_raw, t_raw = (n % N if m > 1 else 0), (1 if n > 1 else 0)
    raw_gens = [g for g in (s_raw, t_raw) if g != 0]
    table, new_of_raw, gens = _bfs_reindex(raw, raw_gens)
    order = np.empty(N, np.int64)
    order[new_of_raw] = np.arange(N)
    labels = [_st_label(int(A[r]), int(B[r])) for r in order]
    named = {}
    if m > 1:
        named["s"] = int(new_of_raw[s_raw])
    if n > 1:
        named["t"] = int(new_of_raw[t_raw])
    return GroupTable(table, gens, labels=labels, named=named, name=name)


def _st_label(a: int, b: int) -> str:
    parts = []
    if a:
        parts.append("s" if a == 1 else f"s^{a}")
    if b:
        parts.append("t" if b == 1 else f"t^{b}")
    return "*".join(parts) or "1"


def _perm_group(gen_perms, name: str, gen_names) -> GroupTable:
    """Permutation group; ``x*y`` applies ``x`` first, then ``y``."""
    d = len(gen_perms[0])
    ident = tuple(range(d))
    index = {ident: 0}
    elems = [ident]
    head = 0
    while head < len(elems):
        x = elems[head]
        head += 1
        for g in gen_perms:
            y = tuple(g[i] for i in x)
            if y not in index:
                index[y] = len(elems)
                elems.append(y)
    P = np.asarray(elems, np.int64)
    N = len(elems)
    # pick base points until images on them identify elements
    base = []
    codes = np.zeros(N, np.int64)
    for pt in range(d):
        base.append(pt)
        codes = codes * d + P[:, pt]
        if np.unique(codes).size == N:
            break
    sorter = np.argsort(codes)
    sorted_codes = codes[sorter]
    table = np.empty((N, N), np.int32)
    radix = d ** np.arange(len(base) - 1, -1, -1, dtype=np.int64)
    for x in range(N):
        q = P[:, P[x, base]] @ radix  # codes of x*y for all y, as [y]
        table[x] = sorter[np.searchsorted(sorted_codes, q)]
    gens = [index[tuple(g)] for g in gen_perms]
    named = dict(zip(gen_names, gens))
    return GroupTable(table, gens, named=named, name=name)


def _projective_line_gens(p: int, with_dilation: bool):
    inf = p
    shift = [(x + 1) % p for x in range(p)] + [inf]
    flip = [inf] + [(-pow(x, -1, p)) % p for x in range(1, p)] + [0]
    gens = [shift, flip]
    names = ["a", "b"]
    if with_dilation:
        c = next(c for c in range(2, p) if pow(c, (p - 1) // 2, p) == p - 1)
        gens.append([(c * x) % p for x in range(p)] + [inf])
        names.append("c")
    return gens, names


def load_cayley(path, name: str | None = None) -> GroupTable:
    """Load a JSON Cayley table: ``{"n": int, "table": [n*n ints], "names": [...]}``."""
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise FileFormatError(f"cannot read Cayley file {path}: {exc}") from exc
    return cayley_from_dict(doc, name=name or Path(path).stem)


def cayley_from_dict(doc, name: str = "cayley") -> GroupTable:
    if not isinstance(doc, dict) or "n" not in doc or "table" not in doc:
        raise FileFormatError('Cayley document needs fields "n" and "table"')
    n = doc["n"]
    table = doc["table"]
    if not isinstance(n, int) or n < 1:
        raise FileFormatError('"n" must be a positive integer')
    if not isinstance(table, list) or len(table) != n * n:
        raise FileFormatError(f'"table" must hold n^2 = {n * n} entries')
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in table):
        raise FileFormatError('"table" entries must be integers')
    arr = np.asarray(table, np.int64).reshape(n, n)
    if arr.min() < 0 or arr.max() >= n:
        raise FileFormatError("table entry out of range 0..n-1")
    names = doc.get("names")
    if names is not None and (not isinstance(names, list) or len(names) != n):
        raise FileFormatError('"names" must list n strings')
    ar = np.arange(n)
    if not (np.array_equal(arr[0], ar) and np.array_equal(arr[:, 0], ar)):
        raise FileFormatError("index 0 is not a two-sided identity")
    if not np.array_equal(np.sort(arr, axis=1), np.broadcast_to(ar, (n, n))):
        raise FileFormatError("a row of the table is not a permutation")
    # greedy generating set, file indexing kept
    gens = []
    span = np.zeros(n, bool)
    span[0] = True
    for x in range(n):
        if not span[x]:
            gens.append(x)
            frontier = np.flatnonzero(span)
            while frontier.size:
                nxt = np.unique(arr[frontier[:, None], np.asarray(gens)[None, :]].ravel())
                nxt = nxt[~span[nxt]]
                span[nxt] = True
                frontier = nxt
    G = GroupTable(arr, gens, labels=[str(s) for s in names] if names else None, name=name)
    G.verify_axioms()
    return G


def build(spec: GroupSpec | str, ceiling: int = DEFAULT_CEILING) -> GroupTable:
    """Construct the group described by ``spec``."""
    if isinstance(spec, str):
        spec = GroupSpec.parse(spec)
    validate(spec)
    order = spec.order()
    if order is not None and order > ceiling:
        raise CeilingExceeded(f"{spec} has order {order} > ceiling {ceiling}",
                              estimate=order, budget=ceiling)
    name = str(spec)
    if spec.kind == "cayley":
        G = load_cayley(spec.args[0], name=name)
        if G.n > ceiling:
            raise CeilingExceeded(f"{spec} has order {G.n} > ceiling {ceiling}",
                                  estimate=G.n, budget=ceiling)
        return G
    if spec.kind in ("psl2", "pgl2"):
        p = spec.args[0]
        gens, names = _projective_line_gens(p, spec.kind == "pgl2")
        G = _perm_group(gens, name, names)
        if G.n != order:
            raise InvalidSpec(f"{spec} closed to {G.n} elements, expected {order}")
        return G
    n, m, k = spec.resolved().args
    return _metacyclic(n, m, k % n if n > 1 else 0, name)
