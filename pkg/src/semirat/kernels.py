"""Hot inner loops over dense multiplication tables.

Every kernel has a numba implementation and a pure-numpy implementation
with identical results. The public names dispatch on ``_accel.BACKEND``;
the ``*_numba`` / ``*_numpy`` variants stay importable so tests and the
benchmark can compare them directly.
"""

from __future__ import annotations

import numpy as np

from . import _accel
from ._accel import njit

# ---------------------------------------------------------------------------
# word image counting


@njit(cache=True, nogil=True)
def _count_word_images_jit(mul, fixed, syl_slot, syl_row, powtab, nfree):
    n = mul.shape[0]
    m = fixed.shape[0]
    nsyl = syl_slot.shape[0]
    out = np.zeros((m, n), np.int64)
    vals = np.zeros(3, np.int64)
    total = 1
    for _ in range(nfree):
        total *= n
    for r in range(m):
        vals[0] = fixed[r]
        for t in range(total):
            rem = t
            for v in range(nfree):
                vals[v + 1] = rem % n
                rem //= n
            acc = 0
            for i in range(nsyl):
                acc = mul[acc, powtab[syl_row[i], vals[syl_slot[i]]]]
            out[r, acc] += 1
    return out


def count_word_images_numpy(mul, fixed, syl_slot, syl_row, powtab, nfree):
    n = mul.shape[0]
    out = np.zeros((len(fixed), n), np.int64)
    if nfree == 0:
        for r, c in enumerate(fixed):
            acc = 0
            for slot, row in zip(syl_slot, syl_row):
                acc = mul[acc, powtab[row, c]]
            out[r, acc] += 1
        return out
    if nfree == 1:
        for r, c in enumerate(fixed):
            acc = np.zeros(n, dtype=mul.dtype)
            for slot, row in zip(syl_slot, syl_row):
                acc = mul[acc, powtab[row, c] if slot == 0 else powtab[row]]
            out[r] = np.bincount(acc, minlength=n)
        return out
    if nfree == 2:
        for r, c in enumerate(fixed):
            counts = np.zeros(n, np.int64)
            for y in range(n):
                acc = np.zeros(n, dtype=mul.dtype)
                for slot, row in zip(syl_slot, syl_row):
                    if slot == 0:
                        operand = powtab[row, c]
                    elif slot == 1:
                        operand = powtab[row, y]
                    else:
                        operand = powtab[row]
                    acc = mul[acc, operand]
                counts += np.bincount(acc, minlength=n)
            out[r] = counts
        return out
    raise ValueError("at most two free variables are supported")


def count_word_images_numba(mul, fixed, syl_slot, syl_row, powtab, nfree):
    if nfree > 2:
        raise ValueError("at most two free variables are supported")
    return _count_word_images_jit(mul, np.asarray(fixed, np.int64),
                                  np.asarray(syl_slot, np.int64),
                                  np.asarray(syl_row, np.int64), powtab, nfree)


def count_word_images(mul, fixed, syl_slot, syl_row, powtab, nfree):
    """Count word values with the first variable pinned.

    Row ``r`` of the result holds, for every element ``g``, the number of
    assignments of the ``nfree`` free variables such that the word,
    evaluated with the pinned variable equal to ``fixed[r]``, yields ``g``.
    Syllable ``i`` multiplies by ``powtab[syl_row[i], value of slot
    syl_slot[i]]``; slot 0 is the pinned variable.
    """
    if _accel.HAVE_NUMBA:
        return count_word_images_numba(mul, fixed, syl_slot, syl_row, powtab, nfree)
    return count_word_images_numpy(mul, fixed, syl_slot, syl_row, powtab, nfree)


# ---------------------------------------------------------------------------
# homomorphism extension along a spanning tree


@njit(cache=True, nogil=True)
def _extend_homomorphism_jit(mul, order, parent, pgen, gens, images):
    n = mul.shape[0]
    phi = np.empty(n, np.int64)
    phi[order[0]] = 0
    for idx in range(1, n):
        x = order[idx]
        phi[x] = mul[phi[parent[x]], images[pgen[x]]]
    seen = np.zeros(n, np.bool_)
    for x in range(n):
        if seen[phi[x]]:
            phi[0] = -1
            return phi
        seen[phi[x]] = True
    for j in range(gens.shape[0]):
        g = gens[j]
        img = images[j]
        for x in range(n):
            if phi[mul[x, g]] != mul[phi[x], img]:
                phi[0] = -1
                return phi
    return phi


def extend_homomorphism_numpy(mul, order, parent, pgen, level_ptr, gens, images):
    n = mul.shape[0]
    images = np.asarray(images, np.int64)
    phi = np.empty(n, np.int64)
    phi[order[0]] = 0
    for a, b in zip(level_ptr[1:-1], level_ptr[2:]):  # level 0 is the root alone
        xs = order[a:b]
        phi[xs] = mul[phi[parent[xs]], images[pgen[xs]]]
    if np.unique(phi).size != n:
        phi[0] = -1
        return phi
    for g, img in zip(gens, images):
        if not np.array_equal(phi[mul[:, g]], mul[phi, img]):
            phi[0] = -1
            return phi
    return phi


def extend_homomorphism_numba(mul, order, parent, pgen, level_ptr, gens, images):
    return _extend_homomorphism_jit(mul, order, parent, pgen,
                                    np.asarray(gens, np.int64),
                                    np.asarray(images, np.int64))


def extend_homomorphism(mul, order, parent, pgen, level_ptr, gens, images):
    """Extend generator images to a map on all elements and verify it.

    ``order`` lists elements so that each one's spanning-tree parent comes
    first (``level_ptr`` delimits its breadth-first levels), with
    ``x = parent[x] * gens[pgen[x]]``. Returns the element map, or an
    array whose entry 0 is -1 when the map is not a bijective
    homomorphism. Checking ``phi(x*g) = phi(x)*phi(g)`` for all ``x`` and
    every generator ``g`` is sufficient: induction on word length gives
    ``phi(x*y) = phi(x)*phi(y)`` for every ``y``.
    """
    if _accel.HAVE_NUMBA:
        return extend_homomorphism_numba(mul, order, parent, pgen, level_ptr, gens, images)
    return extend_homomorphism_numpy(mul, order, parent, pgen, level_ptr, gens, images)


# ---------------------------------------------------------------------------
# class multiplication coefficients


@njit(cache=True, nogil=True)
def _class_coefficients_jit(mul, inv, class_of, reps, h):
    n = mul.shape[0]
    a = np.zeros((h, h, h), np.int64)
    for k in range(h):
        z = reps[k]
        for y in range(n):
            a[class_of[mul[z, inv[y]]], class_of[y], k] += 1
    return a


def class_coefficients_numpy(mul, inv, class_of, reps, h):
    a = np.zeros((h, h, h), np.int64)
    class_of = np.asarray(class_of)
    for k, z in enumerate(reps):
        i_idx = class_of[mul[z, inv]]
        flat = np.bincount(i_idx * h + class_of, minlength=h * h)
        a[:, :, k] = flat.reshape(h, h)
    return a


def class_coefficients_numba(mul, inv, class_of, reps, h):
    return _class_coefficients_jit(mul, np.asarray(inv, np.int64),
                                   np.asarray(class_of, np.int64),
                                   np.asarray(reps, np.int64), h)


def class_coefficients(mul, inv, class_of, reps, h):
    """``a[i, j, k]`` = #{(x, y) : x in K_i, y in K_j, x*y = reps[k]}."""
    if _accel.HAVE_NUMBA:
        return class_coefficients_numba(mul, inv, class_of, reps, h)
    return class_coefficients_numpy(mul, inv, class_of, reps, h)


# ---------------------------------------------------------------------------
# associativity


@njit(cache=True, nogil=True)
def _assoc_rows_jit(mul, rows):
    n = mul.shape[0]
    bad = 0
    for idx in range(rows.shape[0]):
        a = rows[idx]
        for b in range(n):
            ab = mul[a, b]
            for c in range(n):
                if mul[ab, c] != mul[a, mul[b, c]]:
                    bad += 1
    return bad


@njit(cache=True, nogil=True)
def _assoc_triples_jit(mul, triples):
    bad = 0
    for idx in range(triples.shape[0]):
        a = triples[idx, 0]
        b = triples[idx, 1]
        c = triples[idx, 2]
        if mul[mul[a, b], c] != mul[a, mul[b, c]]:
            bad += 1
    return bad


def associativity_violations_numpy(mul, rows=None, triples=None):
    if triples is not None:
        a, b, c = triples[:, 0], triples[:, 1], triples[:, 2]
        return int(np.count_nonzero(mul[mul[a, b], c] != mul[a, mul[b, c]]))
    bad = 0
    for a in rows:
        bad += int(np.count_nonzero(mul[mul[a]] != mul[a][mul]))
    return bad


def associativity_violations_numba(mul, rows=None, triples=None):
    if triples is not None:
        return int(_assoc_triples_jit(mul, np.asarray(triples, np.int64)))
    return int(_assoc_rows_jit(mul, np.asarray(rows, np.int64)))


def associativity_violations(mul, rows=None, triples=None):
    """Number of failing ``(a*b)*c == a*(b*c)`` checks.

    Either all triples with ``a`` in ``rows``, or the explicit ``(m, 3)``
    array ``triples``.
    """
    if _accel.HAVE_NUMBA:
        return associativity_violations_numba(mul, rows, triples)
    return associativity_violations_numpy(mul, rows, triples)
