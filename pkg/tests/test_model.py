import cmath
import copy
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anyonforge.model import (
    PHI,
    ModelError,
    admissible_f_keys,
    build_su2k,
    builtin_model,
    fibonacci,
    from_dict,
    fusion_product,
    ising,
    load_model,
    metaplectic,
    models_equal,
    save_model,
    smatrix_su2k,
    to_dict,
    total_qdim,
    validate,
)
from anyonforge.qarith import QContext

BUILTIN_NAMES = ["fibonacci", "fibonacci-tqc", "ising", "metaplectic", "vacuum", "su2k:1", "su2k:4"]


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_builtins_validate(name):
    validate(builtin_model(name))


def test_unknown_names():
    for bad in ("lucas", "su2k:0", "su2k:x"):
        with pytest.raises(ModelError):
            builtin_model(bad)
    with pytest.raises(ModelError):
        fibonacci("other")


def test_fibonacci_data():
    m = fibonacci()
    t = m.index("tau")
    assert m.qdims[t] == pytest.approx(PHI)
    assert fusion_product(m, t, t) == {0, t}
    F = m.f_matrix(t, t, t, t)[2]
    assert np.allclose(F, [[1 / PHI, 1 / math.sqrt(PHI)], [1 / math.sqrt(PHI), -1 / PHI]])
    assert m.R(t, t, 0) == pytest.approx(cmath.exp(-4j * math.pi / 5))
    assert m.R(t, t, t) == pytest.approx(cmath.exp(3j * math.pi / 5))
    assert total_qdim(m) == pytest.approx(math.sqrt(1 + PHI**2))
    # the alternative listed S is not unitary; the stored one is
    listed = m.notes["listed_s"]
    assert not np.allclose(listed @ listed.conj().T, np.eye(2))
    assert np.allclose(m.s_matrix @ m.s_matrix.conj().T, np.eye(2))


def test_fibonacci_matches_su2k3_integer_spins():
    su = build_su2k(3)
    fib = fibonacci()
    # tau is spin 1 (doubled label 2)
    assert su.R(2, 2, 0) == pytest.approx(fib.R(1, 1, 0))
    assert su.R(2, 2, 2) == pytest.approx(fib.R(1, 1, 1))
    assert su.F(2, 2, 2, 2, 2, 2) == pytest.approx(fib.F(1, 1, 1, 1, 1, 1))
    S = smatrix_su2k(QContext(3))[np.ix_([0, 2], [0, 2])]
    assert np.allclose(S / np.linalg.norm(S[0]), fib.s_matrix)


def test_ising_data():
    m = ising()
    s, p = m.index("sigma"), m.index("psi")
    assert m.qdims[s] == pytest.approx(math.sqrt(2))
    assert np.allclose(m.f_matrix(s, s, s, s)[2], np.array([[1, 1], [1, -1]]) / math.sqrt(2))
    assert m.F(s, p, s, p, s, s) == -1
    assert m.R(s, s, 0) == pytest.approx(cmath.exp(-1j * math.pi / 8))
    assert m.R(p, p, 0) == -1


def test_metaplectic_data():
    m = metaplectic()
    assert m.labels == ["1", "X", "Y", "X'", "Z"]
    assert np.allclose(m.qdims, [1, math.sqrt(3), 2, math.sqrt(3), 1])
    X, Y = m.index("X"), m.index("Y")
    assert fusion_product(m, X, X) == {0, Y}
    # the formula value at X' differs from the listed alternative
    assert m.notes["twist_mismatch"] == ["X'"]
    assert m.twists[m.index("X'")] == pytest.approx(cmath.exp(2j * math.pi * 15 / 24))


@pytest.mark.parametrize("k", range(1, 8))
def test_su2k_structure(k):
    m = build_su2k(k)
    assert m.rank == k + 1
    assert m.level == k
    d = [math.sin((j + 1) * math.pi / (k + 2)) / math.sin(math.pi / (k + 2)) for j in range(k + 1)]
    assert np.allclose(m.qdims, d)
    # every label is self-dual
    assert all(m.dual(a) == a for a in range(k + 1))
    assert len(list(admissible_f_keys(m.fusion))) == len(m.f_table)


@settings(max_examples=8)
@given(st.sampled_from(BUILTIN_NAMES))
def test_round_trip_through_json(tmp_path_factory, name):
    m = builtin_model(name)
    path = tmp_path_factory.mktemp("models") / "m.json"
    save_model(m, path)
    back = load_model(path)
    assert models_equal(m, back)
    assert to_dict(back) == json.loads(path.read_text())


def test_models_equal_detects_changes():
    a, b = ising(), ising()
    assert models_equal(a, b)
    key = next(iter(b.f_table))
    b.f_table[key] += 1e-3
    assert not models_equal(a, b)


def _doc():
    return to_dict(fibonacci())


@pytest.mark.parametrize(
    "mutate, fragment",
    [
        (lambda d: d.pop("labels"), "missing field 'labels'"),
        (lambda d: d.update(name=3), "wrong type"),
        (lambda d: d["fusion"].append([1, 1, 0]), "multiplicity"),
        (lambda d: d["fusion"].append([0, 1]), "triple"),
        (lambda d: d["fusion"].append([0, 1, 7]), "out of range"),
        (lambda d: d["twists"].__setitem__(0, 1.0), "[re, im] pair"),
        (lambda d: d["qdims"].pop(), "length"),
        (lambda d: d["F"].pop(), "F: missing entry"),
        (lambda d: d["F"].append(dict(a=0, b=0, c=0, d=1, e=0, f=0, re=1, im=0)), "not admissible"),
        (lambda d: d["R"][0].pop("re"), "R[0]"),
        (lambda d: d["S"].pop(), "labels^2"),
        (lambda d: d["qdims"].__setitem__(1, 2.0), "qdims"),
    ],
)
def test_schema_errors(mutate, fragment):
    doc = copy.deepcopy(_doc())
    mutate(doc)
    with pytest.raises(ModelError, match=None) as info:
        from_dict(doc)
    assert fragment in str(info.value)


def test_load_rejects_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ModelError, match="JSON"):
        load_model(p)
    p.write_text("[1, 2]")
    with pytest.raises(ModelError, match="object"):
        load_model(p)


def test_validate_flags_broken_fusion():
    m = ising()
    m.fusion = m.fusion.copy()
    m.fusion[1, 2, 0] = 1
    with pytest.raises(ModelError, match="fusion"):
        validate(m)


def test_relabeled_keeps_data():
    m = build_su2k(2).relabeled(["1", "s", "p"], name="renamed")
    assert m.name == "renamed" and m.index("s") == 1
    with pytest.raises(ModelError):
        m.index("q")
    with pytest.raises(ModelError):
        build_su2k(2).relabeled(["a", "b"])
