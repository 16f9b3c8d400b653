"""Irreducible character tables by the Dixon-Schneider method, and Fourier
coefficients of class functions against them.

Central characters are found as common eigenvectors of the class
multiplication matrices over a prime field F_q with q = 1 mod exp(G) and
q > 2 sqrt|G|. Character values are then lifted to exact elements of
Z[w], w = exp(2 pi i / exp(G)), by recovering eigenvalue multiplicities
of each class representative from the power maps.
"""

from __future__ import annotations

import math
import weakref
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from sympy import isprime, primitive_root

from . import kernels
from .cyclotomic import Cyclotomic
from .errors import CharacterTableError
from .groups import GroupTable
from .wordmap import DEFAULT_BUDGET, ClassFunction, distribution
from .words import parse

_TABLES: "weakref.WeakKeyDictionary[GroupTable, CharacterTable]" = weakref.WeakKeyDictionary()


# ---------------------------------------------------------------------------
# linear algebra over F_q


def _rref(M: np.ndarray, q: int) -> tuple[np.ndarray, list]:
    M = M.copy() % q
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            M[[r, p]] = M[[p, r]]
        M[r] = (M[r] * pow(int(M[r, c]), -1, q)) % q
        others = np.flatnonzero(M[:, c])
        others = others[others != r]
        if others.size:
            M[others] = (M[others] - np.outer(M[others, c], M[r])) % q
        pivots.append(c)
        r += 1
    return M[:r], pivots


def _nullspace(M: np.ndarray, q: int) -> np.ndarray:
    """Basis of ``{v : M v = 0}`` as the columns of the result."""
    R, pivots = _rref(M, q)
    n = M.shape[1]
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((n, len(free)), np.int64)
    for k, f in enumerate(free):
        basis[f, k] = 1
        for i, p in enumerate(pivots):
            basis[p, k] = (-R[i, f]) % q
    return basis


def _column_echelon(B: np.ndarray, q: int) -> tuple[np.ndarray, list]:
    R, pivots = _rref(B.T, q)
    return R.T.copy(), pivots


def _charpoly(C: np.ndarray, q: int) -> list:
    """Characteristic polynomial mod q, highest degree first (Faddeev-LeVerrier)."""
    d = C.shape[0]
    coeffs = [1]
    M = np.zeros_like(C)
    ident = np.eye(d, dtype=np.int64)
    for k in range(1, d + 1):
        M = (C @ M + coeffs[-1] * ident) % q
        tr = int(np.trace((C @ M) % q)) % q
        coeffs.append((-tr * pow(k, -1, q)) % q)
    return coeffs


def _roots(poly: list, q: int) -> list:
    lam = np.arange(q, dtype=np.int64)
    val = np.zeros(q, np.int64)
    for c in poly:
        val = (val * lam + c) % q
    return np.flatnonzero(val == 0).tolist()


def dixon_prime(order: int, exponent: int) -> int:
    """Smallest prime q = 1 mod exponent with q > 2 sqrt(order)."""
    k = 1
    while True:
        q = k * exponent + 1
        if q * q > 4 * order and isprime(q):
            return q
        k += 1


# ---------------------------------------------------------------------------
# tables


@dataclass(frozen=True, eq=False)
class CharacterTable:
    group: GroupTable
    conductor: int
    rows: tuple  # rows[chi][class] -> Cyclotomic
    prime: int

    @property
    def degrees(self) -> tuple:
        return tuple(int(r[0].rational_value()) for r in self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def to_json(self) -> dict:
        G = self.group
        return {
            "order": G.n,
            "conductor": self.conductor,
            "classes": [
                {"size": s, "rep_order": int(G.orders[r]), "rep": r}
                for s, r in zip(G.classes.sizes, G.classes.reps)
            ],
            "rows": [[v.to_json() for v in row] for row in self.rows],
        }


def _central_characters(G: GroupTable, q: int, seed: int) -> list:
    cls = G.classes
    h = cls.count
    a = kernels.class_coefficients(G.mul, G.inv, cls.class_of, np.asarray(cls.reps), h)
    # A_j[i, k] = a[i, j, k]; central characters are common column eigenvectors
    mats = [(a[:, j, :] % q).astype(np.int64) for j in range(h)]
    rng = np.random.default_rng(seed)
    stack = [(np.eye(h, dtype=np.int64), list(range(h)))]
    done = []
    while stack:
        B, pivots = stack.pop()
        if B.shape[1] == 1:
            done.append(B[:, 0])
            continue
        candidates = [sum(int(c) * M for c, M in zip(rng.integers(0, q, size=h), mats)) % q
                      for _ in range(3)]
        candidates.extend(mats[1:])
        for A in candidates:
            C = ((A @ B) % q)[pivots, :]
            lams = _roots(_charpoly(C, q), q)
            if len(lams) < 2:
                continue
            d = C.shape[0]
            pieces = []
            for lam in lams:
                K = _nullspace((C - lam * np.eye(d, dtype=np.int64)) % q, q)
                pieces.append(_column_echelon((B @ K) % q, q))
            if sum(p[0].shape[1] for p in pieces) != d:
                raise CharacterTableError("class matrix is not diagonalizable mod q")
            stack.extend(pieces)
            break
        else:
            raise CharacterTableError(f"could not split a common eigenspace of dimension {B.shape[1]}")
    if len(done) != h:
        raise CharacterTableError(f"found {len(done)} central characters, expected {h}")
    out = []
    for v in done:
        if v[0] % q == 0:
            raise CharacterTableError("central character vanishes on the identity class")
        out.append((v * pow(int(v[0]), -1, q)) % q)
    return out


def character_table(G: GroupTable, seed: int = 12345) -> CharacterTable:
    """All irreducible characters of ``G`` with exact cyclotomic values."""
    cached = _TABLES.get(G)
    if cached is not None:
        return cached
    cls = G.classes
    h, n, e = cls.count, G.n, G.exponent
    q = dixon_prime(n, e)
    z = pow(primitive_root(q), (q - 1) // e, q)  # image of w in F_q
    sizes = np.asarray(cls.sizes, np.int64)
    inv_class = [int(cls.class_of[G.inv[r]]) for r in cls.reps]
    size_inv = [pow(int(s), -1, q) for s in sizes]

    # power maps: class of g^j for each representative
    power_classes = []
    for r in cls.reps:
        o = int(G.orders[r])
        pw, cur = [], 0
        for _ in range(o):
            pw.append(int(cls.class_of[cur]))
            cur = int(G.mul[cur, r])
        power_classes.append(pw)

    rows = []
    for omega in _central_characters(G, q, seed):
        s = sum(int(omega[i]) * int(omega[inv_class[i]]) * size_inv[i] for i in range(h)) % q
        dsq = (n * pow(s, -1, q)) % q
        deg = next((d for d in range(1, math.isqrt(n) + 1) if d * d % q == dsq), None)
        if deg is None:
            raise CharacterTableError("no integer degree matches the central character")
        chi_mod = [(int(omega[i]) * deg * size_inv[i]) % q for i in range(h)]
        row = []
        for i in range(h):
            pw = power_classes[i]
            o = len(pw)
            zeta = pow(z, e // o, q)
            o_inv = pow(o, -1, q)
            terms = {}
            for l in range(o):
                m = sum(chi_mod[pw[j]] * pow(zeta, (-l * j) % o, q) for j in range(o)) * o_inv % q
                if m > deg:
                    raise CharacterTableError(f"eigenvalue multiplicity {m} exceeds degree {deg}")
                if m:
                    terms[l * (e // o)] = m
            row.append(Cyclotomic.from_exponents(e, terms))
        rows.append(tuple(row))

    rows.sort(key=lambda r: (r[0].coords[0], not all(v == 1 for v in r),
                             tuple(c for v in r for c in v.coords)))
    table = CharacterTable(group=G, conductor=e, rows=tuple(rows), prime=q)
    problems = verify_table(table)
    if problems:
        raise CharacterTableError("; ".join(problems[:5]))
    _TABLES[G] = table
    return table


def verify_table(table: CharacterTable) -> list:
    """Exact checks; returns a list of failures (empty when the table is sound)."""
    G = table.group
    n = G.n
    sizes = G.classes.sizes
    rows = table.rows
    h = G.classes.count
    problems = []
    if len(rows) != h:
        problems.append(f"{len(rows)} rows for {h} classes")
    degs = table.degrees
    if sum(d * d for d in degs) != n:
        problems.append("sum of squared degrees differs from |G|")
    if any(n % d for d in degs):
        problems.append("a degree does not divide |G|")
    conj = [[v.conj() for v in r] for r in rows]
    for i in range(len(rows)):
        for j in range(i, len(rows)):
            s = sum((sizes[k] * (rows[i][k] * conj[j][k]) for k in range(h)),
                    Cyclotomic.zero(table.conductor))
            if s != (n if i == j else 0):
                problems.append(f"rows {i}, {j} not orthonormal")
    for k in range(h):
        for l in range(k, h):
            s = sum((rows[c][k] * conj[c][l] for c in range(len(rows))), Cyclotomic.zero(table.conductor))
            if s != (Fraction(n, sizes[k]) if k == l else 0):
                problems.append(f"columns {k}, {l} not orthogonal")
    return problems


# ---------------------------------------------------------------------------
# Fourier side


@dataclass(frozen=True, eq=False)
class FourierDecomp:
    table: CharacterTable
    coefficients: tuple  # one Cyclotomic per row

    @property
    def in_z_omega(self) -> tuple:
        return tuple(c.is_integral() for c in self.coefficients)

    @property
    def in_z(self) -> tuple:
        return tuple(c.is_rational_integer() for c in self.coefficients)

    @property
    def generalized_character(self) -> bool:
        return all(self.in_z)

    def reconstruct(self) -> tuple:
        """``sum_chi coeff_chi * chi`` evaluated on every class."""
        e = self.table.conductor
        h = self.table.group.classes.count
        return tuple(
            sum((c * row[k] for c, row in zip(self.coefficients, self.table.rows)), Cyclotomic.zero(e))
            for k in range(h)
        )

    def to_json(self) -> dict:
        return {
            "coefficients": [c.to_json() for c in self.coefficients],
            "in_z_omega": list(self.in_z_omega),
            "in_z": list(self.in_z),
            "generalized_character": self.generalized_character,
        }


def fourier(G: GroupTable, f: ClassFunction) -> FourierDecomp:
    """Inner products ``<f, chi> = |G|^-1 sum_g f(g) conj(chi(g))``."""
    table = character_table(G)
    sizes = G.classes.sizes
    coeffs = []
    for row in table.rows:
        acc = Cyclotomic.zero(table.conductor)
        for k, v in enumerate(f.values):
            if v:
                acc = acc + row[k].conj() * (sizes[k] * Fraction(v))
        coeffs.append(acc / G.n)
    return FourierDecomp(table=table, coefficients=tuple(coeffs))


def frobenius_commutator_check(G: GroupTable, budget: int = DEFAULT_BUDGET) -> dict:
    """Compare commutator counts with ``|G| sum_chi chi(g)/chi(1)``."""
    table = character_table(G)
    counts = distribution(G, parse("x*y*x^-1*y^-1"), budget=budget)
    mismatches = []
    for k in range(G.classes.count):
        s = sum((row[k] / row[0].rational_value() for row in table.rows), Cyclotomic.zero(table.conductor))
        predicted = s * G.n
        if predicted != counts.values[k]:
            mismatches.append({"class": k, "engine": counts.values[k], "formula": str(predicted)})
    return {"ok": not mismatches, "values": list(counts.values), "mismatches": mismatches}


def integer_character_certificate(G: GroupTable) -> bool:
    """True when every irreducible of degree >= 2 is rational-integer valued.

    A true result certifies that every word distribution on ``G`` is a
    generalized character; false is inconclusive.
    """
    table = character_table(G)
    return all(
        all(v.is_rational_integer() for v in row)
        for row, d in zip(table.rows, table.degrees)
        if d >= 2
    )
