import itertools
from fractions import Fraction

import numpy as np
import pytest

import gibbscut as g


def brute_min(p):
    return min(p(x) for x in itertools.product((0, 1), repeat=p.n_vars))


def test_negative_pair_by_cut():
    p = g.Polynomial.from_terms(2, {(0, 1): -1})
    r = g.minimize(p, "cut")
    assert r.min_value == -1
    assert r.minimal == (1, 1)
    assert r.method == "cut"


def test_methods_agree_on_positive_gadget():
    p = g.Polynomial.from_terms(
        3, {(0,): 1, (2,): Fraction(-1, 2), (0, 1, 2): 1, (0, 1): -1, (0, 2): -1, (1, 2): -1}
    )
    results = [g.minimize(p, m) for m in ("brute", "cut", "msfm")]
    assert len({(r.min_value, r.minimal, r.maximal) for r in results}) == 1
    assert results[0].min_value == brute_min(p)
    assert g.minimize(p, verify=True).method == "cut"


def test_cut_rejects_nonsubmodular():
    p = g.Polynomial.from_terms(2, {(0, 1): 1})
    with pytest.raises(g.Infeasible):
        g.minimize(p, "cut")
    report = g.check(p)
    assert report["submodular"]["verdict"] is False
    assert report["submodular"]["witness"]["i"] == 0


def test_invalid_input():
    with pytest.raises(g.InvalidInput):
        g.minimize(g.Polynomial.from_terms(1, {(3,): 1}))
    with pytest.raises(g.InvalidInput):
        g.expand_table(1, 2, [0, 1])


def test_expand_table():
    p, c = g.expand_table(1, 2, [0, -1, -2])
    assert c == 3
    assert p.terms == {(0,): -1, (1,): 2, (0, 1): -3}
    assert g.minimize(p).min_value == -2


def test_expand_model_round_trip():
    model = {"width": 2, "height": 1, "k": 1, "unary": [[0, 0], [0, 0]], "pairwise": {"g": [0, 1], "lambda": 1}}
    p, _ = g.expand_model(model)
    assert p.terms[(0, 1)] == -2
    assert g.Polynomial.from_json(p.to_json()) == p


def test_msfm_trace():
    terms = {(i, i + 1): -1 for i in range(9)}
    terms[(0,)] = 1
    p = g.Polynomial.from_terms(10, terms)
    r = g.minimize(p, "msfm", block_sizes=[3])
    assert r.min_value == -8
    assert r.trace is not None and "levels" in r.trace


def test_gadget_dump():
    text = g.gadget_dump(g.Polynomial.from_terms(3, {(0, 1, 2): -1}))
    assert "c vars 3 aux 1" in text


def test_denoise_numpy():
    rng = np.random.default_rng(0)
    img = np.clip(np.add.outer(np.arange(16), np.arange(16)) * 8 + rng.integers(-40, 41, (16, 16)), 0, 255)
    img = img.astype(np.uint8)
    a, labels, ea = g.denoise(img, lam=30, method="cut")
    b, _, eb = g.denoise(img, lam=30, method="msfm")
    assert isinstance(a, np.ndarray) and a.dtype == np.uint8 and a.shape == img.shape
    assert np.array_equal(a, b) and ea == eb
    assert set(np.unique(labels)) <= {0, 1, 2, 3}


def test_denoise_constant_lists():
    out, _, energy = g.denoise([[85, 85], [85, 85]], lam=5)
    assert out == [[85, 85], [85, 85]]
    assert energy == 0
