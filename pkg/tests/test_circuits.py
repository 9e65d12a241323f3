import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anyonforge.circuits import (
    BUILTINS,
    CH,
    Circuit,
    CircuitError,
    Gate,
    QutritState,
    builtin_circuit,
    compare_to_reference,
    controlled,
    format_circuit,
    gate_matrix,
    load_circuit,
    measure_charge,
    oracle_check,
    parse_circuit,
    simulate,
    sum_matrix,
    truth_table,
)

GATES = [("Z3", "+1"), ("Z3", "+2"), ("Z3", "01"), ("Z3", "12"), ("Z3", "02"), ("CH", None),
         ("SUM", "1"), ("SUM", "2"), ("SWAP", None), ("HORNER", None)]
ARITY = {"Z3": 1, "CH": 1, "SUM": 2, "SWAP": 2, "HORNER": 3}


@pytest.mark.parametrize("name, param", GATES)
def test_gate_matrices_unitary(name, param):
    for controls in ((), (1,), (2, 0)):
        u = gate_matrix(name, param, controls)
        assert u.shape == (3 ** (ARITY[name] + len(controls)),) * 2
        assert np.allclose(u @ u.conj().T, np.eye(len(u)))


def test_gate_semantics():
    e = np.eye(3)
    assert np.allclose(gate_matrix("Z3", "+1") @ e[0], e[1])
    assert np.allclose(gate_matrix("Z3", "+2") @ e[0], e[2])
    assert np.allclose(gate_matrix("Z3", "12") @ e[1], e[2])
    for i, j in itertools.product(range(3), repeat=2):
        ket = np.kron(e[i], e[j])
        assert np.allclose(sum_matrix(1) @ ket, np.kron(e[i], e[(i + j) % 3]))
        assert np.allclose(sum_matrix(2) @ ket, np.kron(e[i], e[(2 * i + j) % 3]))
        assert np.allclose(gate_matrix("SWAP") @ ket, np.kron(e[j], e[i]))
    assert np.allclose(np.linalg.matrix_power(CH, 4), np.eye(3))
    c = controlled(gate_matrix("Z3", "+1"), 2)
    assert np.allclose(c[:6, :6], np.eye(6))
    with pytest.raises(CircuitError):
        gate_matrix("Z3", "+3")
    with pytest.raises(CircuitError):
        gate_matrix("TOFFOLI")
    with pytest.raises(CircuitError):
        controlled(np.eye(3), 3)


def dense_apply(vec, u, wires, n):
    # oracle: build the full operator with kron and a permutation of axes
    k = len(wires)
    t = vec.reshape([3] * n)
    rest = [w for w in range(n) if w not in wires]
    t = np.transpose(t, list(wires) + rest).reshape(3**k, -1)
    t = (u @ t).reshape([3] * n)
    inv = np.argsort(list(wires) + rest)
    return np.transpose(t, inv).reshape(-1)


@settings(max_examples=40)
@given(st.integers(1, 4), st.data())
def test_sparse_apply_matches_dense(n, data):
    rng = np.random.default_rng(data.draw(st.integers(0, 10**6)))
    vec = rng.normal(size=3**n) + 1j * rng.normal(size=3**n)
    vec /= np.linalg.norm(vec)
    state = QutritState.from_vector(vec)
    for _ in range(3):
        name, param = data.draw(st.sampled_from([g for g in GATES if ARITY[g[0]] <= n]))
        k = ARITY[name]
        wires = tuple(data.draw(st.permutations(range(n)))[:k])
        u = gate_matrix(name, param)
        state = state.apply(u, wires)
        vec = dense_apply(vec, u, wires, n)
    assert np.allclose(state.vector, vec, atol=1e-12)
    assert state.norm() == pytest.approx(1)


def test_wire_zero_is_most_significant():
    s = QutritState.basis((1, 0))
    assert np.argmax(np.abs(s.vector)) == 3
    with pytest.raises(CircuitError):
        QutritState.basis((3,))
    with pytest.raises(CircuitError):
        QutritState.from_vector(np.ones(4))


def test_measure_charge():
    plus = QutritState.from_vector(np.ones(3) / np.sqrt(3))
    p, post = measure_charge(plus, 0, {0, 1})
    assert p == pytest.approx(2 / 3)
    assert np.allclose(post.vector, [1 / np.sqrt(2), 1 / np.sqrt(2), 0])
    pair = QutritState.from_vector(np.kron([0, 1, 0], np.ones(3) / np.sqrt(3)))
    p, post = measure_charge(pair, 1, {2})
    assert p == pytest.approx(1 / 3)
    assert post.dominant()[0] == (1, 2)
    assert measure_charge(pair, 0, {1})[0] == pytest.approx(1)
    with pytest.raises(CircuitError):
        measure_charge(pair, 0, {0})
    with pytest.raises(CircuitError):
        measure_charge(pair, 0, set())
    with pytest.raises(CircuitError):
        measure_charge(pair, 2, {0})


REFERENCE = ["half_adder", "full_adder", "half_subtractor", "full_subtractor", "tppg",
             "block1", "block2", "block3", "block4"]


@pytest.mark.parametrize("name", REFERENCE)
def test_reference_tables(name):
    matched, total, bad = compare_to_reference(name)
    assert not bad and matched == total


@pytest.mark.parametrize("name", ["half_adder", "full_adder"])
def test_adders_compute_sums(name):
    # outputs are (sum digit, carry)
    for inp, out in truth_table(builtin_circuit(name)):
        s = sum(inp)
        assert out == (s % 3, s // 3)


@pytest.mark.parametrize("name", ["two_digit_adder", "multiplier"])
def test_integer_oracles(name):
    assert oracle_check(name) == []


def test_garbage_and_shape():
    c = builtin_circuit("half_adder")
    assert c.garbage == [1]
    assert set(BUILTINS) >= set(REFERENCE) | {"two_digit_adder", "multiplier"}
    assert builtin_circuit("two_digit_adder").n_wires == 7
    assert builtin_circuit("multiplier").n_wires == 16
    with pytest.raises(CircuitError):
        builtin_circuit("divider")


@pytest.mark.parametrize("name", REFERENCE)
def test_text_round_trip(name, tmp_path):
    c = builtin_circuit(name)
    path = tmp_path / f"{name}.qc"
    path.write_text(format_circuit(c))
    back = load_circuit(path)
    assert back.gates == c.gates and back.inputs == c.inputs and back.outputs == c.outputs
    assert truth_table(back) == truth_table(c)


@pytest.mark.parametrize(
    "text",
    [
        "IN 0\nOUT 0\n",
        "WIRES 2\nGATE SUM ON 0\n",
        "WIRES 2\nGATE Z3 +1 ON 0 CTRL 0=1\n",
        "WIRES 2\nGATE Z3 +1 ON 3\n",
        "WIRES 2\nFOO 1\n",
        "WIRES 2\nIN 0\nANC 0=1\n",
        "WIRES 2\nGATE Z3 +1 ON 0 CTRL 1=5\n",
        "WIRES 2\nGATE Z3 a b ON 0\n",
    ],
)
def test_parse_errors(text):
    with pytest.raises(CircuitError):
        parse_circuit(text)


def test_simulate_input_checks():
    c = parse_circuit("WIRES 2\nIN 0 1\nGATE SUM 1 ON 0 1\n")
    assert simulate(c, {0: 1, 1: 1}).dominant()[0] == (1, 2)
    with pytest.raises(CircuitError):
        simulate(c, {0: 1})
    with pytest.raises(ValueError):
        simulate(c, [1])


def test_truth_table_rejects_superpositions():
    c = parse_circuit("WIRES 1\nIN 0\nGATE CH ON 0\n")
    with pytest.raises(CircuitError):
        truth_table(c)
