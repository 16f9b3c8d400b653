"""The numba and numpy kernels must agree bit for bit."""

import os
import subprocess
import sys

import numpy as np
import pytest
from conftest import grp

from semirat import _accel, kernels

needs_numba = pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba unavailable or disabled")


def _setup(G, exps, nfree, nsyl, seed):
    rng = np.random.default_rng(seed)
    powtab = np.stack([G.power_all(e) for e in exps]).astype(np.int32)
    syl_slot = rng.integers(0, nfree + 1, size=nsyl)
    syl_row = rng.integers(0, len(exps), size=nsyl)
    fixed = np.asarray(G.classes.reps, np.int64)
    return G.mul, fixed, syl_slot, syl_row, powtab


@needs_numba
@pytest.mark.parametrize("spec", ["gp:5", "metacyclic:9,3,4", "cayley:tests/data/q8.json"])
@pytest.mark.parametrize("nfree", [0, 1, 2])
def test_count_word_images_backends(spec, nfree):
    G = grp(spec)
    for seed in range(4):
        args = _setup(G, [1, -1, 2, 3], nfree, 5, seed)
        a = kernels.count_word_images_numba(*args, nfree)
        b = kernels.count_word_images_numpy(*args, nfree)
        assert a.dtype == b.dtype == np.int64
        assert np.array_equal(a, b)
        assert (a.sum(axis=1) == G.n ** nfree).all()


def test_count_word_images_rejects_three_free():
    G = grp("cyclic:2")
    args = _setup(G, [1], 3, 2, 0)
    with pytest.raises(ValueError):
        kernels.count_word_images_numpy(*args, 3)
    with pytest.raises(ValueError):
        kernels.count_word_images(*args, 3)


@needs_numba
@pytest.mark.parametrize("spec", ["gp:5", "psl2:7", "metacyclic:3,8,2"])
def test_extend_homomorphism_backends(spec):
    G = grp(spec)
    gens = np.asarray(G.gens, np.int64)
    rng = np.random.default_rng(3)
    tree = (G.mul, G.tree_order, G.tree_parent, G.tree_gen, G.tree_level_ptr, gens)
    # random images (mostly failures) plus the identity map
    trials = [gens.copy()] + [rng.integers(0, G.n, size=len(gens)) for _ in range(50)]
    for images in trials:
        a = kernels.extend_homomorphism_numba(*tree, images)
        b = kernels.extend_homomorphism_numpy(*tree, images)
        assert (a[0] == -1) == (b[0] == -1)
        if a[0] != -1:
            assert np.array_equal(a, b)
    ident = kernels.extend_homomorphism_numpy(*tree, gens)
    assert np.array_equal(ident, np.arange(G.n))


@needs_numba
@pytest.mark.parametrize("spec", ["gp:5", "psl2:7", "cayley:tests/data/s3.json"])
def test_class_coefficients_backends(spec):
    G = grp(spec)
    cls = G.classes
    args = (G.mul, G.inv, np.asarray(cls.class_of, np.int64), np.asarray(cls.reps, np.int64), cls.count)
    a = kernels.class_coefficients_numba(*args)
    b = kernels.class_coefficients_numpy(*args)
    assert np.array_equal(a, b)
    # a[i, j, k] summed over j is |K_i| for each k
    assert (a.sum(axis=1) == np.asarray(cls.sizes)[:, None]).all()


def test_class_coefficients_by_hand(G5):
    # count pairs (x in K_i, y in K_j) with x*y = rep_k directly
    cls = G5.classes
    got = kernels.class_coefficients(G5.mul, G5.inv, np.asarray(cls.class_of), np.asarray(cls.reps), cls.count)
    for i in range(cls.count):
        for j in range(cls.count):
            for k, z in enumerate(cls.reps):
                want = sum(1 for x in cls.members[i] for y in cls.members[j] if G5.mul[x, y] == z)
                assert got[i, j, k] == want


@needs_numba
def test_associativity_backends():
    G = grp("gp:7")
    bad = np.asarray(G.mul).copy()
    bad[1, 2], bad[1, 3] = bad[1, 3], bad[1, 2]
    rows = np.arange(G.n)
    triples = np.random.default_rng(0).integers(0, G.n, size=(5000, 3))
    for mul in (G.mul, bad):
        assert kernels.associativity_violations_numba(mul, rows=rows) == \
            kernels.associativity_violations_numpy(mul, rows=rows)
        assert kernels.associativity_violations_numba(mul, triples=triples) == \
            kernels.associativity_violations_numpy(mul, triples=triples)
    assert kernels.associativity_violations(G.mul, rows=rows) == 0
    assert kernels.associativity_violations(bad, rows=rows) > 0


def test_env_flag_selects_numpy():
    env = dict(os.environ, SEMIRAT_DISABLE_NUMBA="1")
    code = ("import semirat, semirat._accel as a; "
            "from semirat import build, distribution, parse; "
            "G = build('gp:5'); print(a.BACKEND, distribution(G, parse('x*y^2')).values)")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    backend, values = out.stdout.split(" ", 1)
    assert backend == "numpy"
    from semirat import build, distribution, parse
    assert values.strip() == str(distribution(build("gp:5"), parse("x*y^2")).values)
