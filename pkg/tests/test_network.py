"""Inference engine and weight-file format contracts."""
import json
import math

import numpy as np
import pytest

import statrob as sr


def straight_line_forward(net, x):
    """Independent single-example evaluator: explicit loops, no batching."""
    values = [float(v) for v in x]
    for layer in net.layers:
        if isinstance(layer, sr.DenseLayer):
            out = []
            for i in range(layer.out_width):
                acc = float(layer.bias[i])
                for j in range(layer.in_width):
                    acc += float(layer.weights[i, j]) * values[j]
                out.append(acc)
            values = out
        else:
            values = [v if v > 0.0 else 0.0 for v in values]
    return np.array(values)


def test_identity_dense_layer():
    net = sr.Network([sr.DenseLayer(np.eye(2), np.zeros(2))])
    out = net.forward(np.array([[1.0, -2.0]]))
    assert np.array_equal(out, np.array([[1.0, -2.0]]))


def test_relu_clamps_negative_branch():
    net = sr.Network(
        [sr.DenseLayer(np.array([[1.0], [-1.0]]), np.zeros(2)), sr.ReluLayer()]
    )
    out = net.forward(np.array([[3.0]]))
    assert np.array_equal(out, np.array([[3.0, 0.0]]))


def test_zero_input_propagates_biases():
    net = sr.random_network([2, 16, 16, 3], seed=5)
    batched = net.forward(np.zeros((1, 2)))[0]
    reference = straight_line_forward(net, np.zeros(2))
    assert np.allclose(batched, reference, rtol=0, atol=1e-12)


def test_batched_forward_equals_per_row_forward_exactly():
    net = sr.random_network([4, 8, 8, 3], seed=1)
    batch = np.random.default_rng(2).normal(size=(64, 4))
    full = net.forward(batch)
    for i in (0, 1, 17, 63):
        row = net.forward(batch[i : i + 1])
        assert np.array_equal(full[i], row[0])


def test_forward_matches_straight_line_evaluator():
    net = sr.random_network([3, 7, 5, 2], seed=9)
    batch = np.random.default_rng(10).normal(size=(20, 3))
    full = net.forward(batch)
    for i in range(20):
        assert np.allclose(full[i], straight_line_forward(net, batch[i]), atol=1e-12)


def test_positive_homogeneity_with_zero_biases():
    rng = np.random.default_rng(3)
    layers = [
        sr.DenseLayer(rng.normal(size=(6, 4)), np.zeros(6)),
        sr.ReluLayer(),
        sr.DenseLayer(rng.normal(size=(2, 6)), np.zeros(2)),
    ]
    net = sr.Network(layers)
    x = rng.normal(size=(5, 4))
    for alpha in (0.5, 2.0, 7.0):
        assert np.allclose(net.forward(alpha * x), alpha * net.forward(x), rtol=1e-12)


def test_forward_has_no_hidden_state():
    net = sr.random_network([4, 6, 2], seed=8)
    x = np.random.default_rng(1).normal(size=(10, 4))
    assert np.array_equal(net.forward(x), net.forward(x))


def test_forward_rejects_wrong_width():
    net = sr.random_network([4, 2], seed=0)
    with pytest.raises(ValueError):
        net.forward(np.zeros((3, 5)))


def test_dimension_chain_is_validated():
    with pytest.raises(sr.ConfigError):
        sr.Network(
            [
                sr.DenseLayer(np.ones((3, 2)), np.zeros(3)),
                sr.DenseLayer(np.ones((2, 4)), np.zeros(2)),
            ]
        )


def test_non_finite_weights_rejected():
    with pytest.raises(sr.ConfigError):
        sr.DenseLayer(np.array([[np.inf]]), np.zeros(1))


def test_save_load_round_trip_is_bit_identical(tmp_path):
    net = sr.random_network([5, 11, 3], seed=77)
    path = tmp_path / "net.json"
    sr.save_network(net, path)
    loaded = sr.load_network(path)
    assert loaded.input_dim == net.input_dim
    assert loaded.output_dim == net.output_dim
    for a, b in zip(net.layers, loaded.layers):
        assert a.kind == b.kind
        if isinstance(a, sr.DenseLayer):
            assert np.array_equal(a.weights, b.weights)
            assert np.array_equal(a.bias, b.bias)
    # saving the loaded network reproduces the file byte for byte
    path2 = tmp_path / "net2.json"
    sr.save_network(loaded, path2)
    assert path.read_bytes() == path2.read_bytes()


def test_identity_fixture_file_loads(tmp_path):
    doc = {
        "format_version": 1,
        "input_dim": 2,
        "layers": [
            {"kind": "dense", "out": 2, "in": 2,
             "weights": [1.0, 0.0, 0.0, 1.0], "bias": [0.0, 0.0]}
        ],
    }
    path = tmp_path / "identity.json"
    path.write_text(json.dumps(doc))
    net = sr.load_network(path)
    assert len(net.layers) == 1
    assert np.array_equal(net.forward(np.array([[3.0, -4.0]])), [[3.0, -4.0]])


def _write_doc(tmp_path, doc):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    return path


def test_load_errors_name_the_offending_layer(tmp_path):
    base = {
        "format_version": 1,
        "input_dim": 2,
        "layers": [
            {"kind": "dense", "out": 2, "in": 2,
             "weights": [1.0, 0.0, 0.0, 1.0], "bias": [0.0, 0.0]},
            {"kind": "dense", "out": 1, "in": 3,
             "weights": [1.0, 1.0, 1.0], "bias": [0.0]},
        ],
    }
    with pytest.raises(sr.LoadError, match="layer 1"):
        sr.load_network(_write_doc(tmp_path, base))

    bad_weights = {
        "format_version": 1,
        "input_dim": 1,
        "layers": [{"kind": "dense", "out": 1, "in": 1,
                    "weights": [math.inf], "bias": [0.0]}],
    }
    with pytest.raises(sr.LoadError, match="layer 0"):
        sr.load_network(_write_doc(tmp_path, bad_weights))

    relu_with_params = {
        "format_version": 1,
        "input_dim": 1,
        "layers": [
            {"kind": "dense", "out": 1, "in": 1, "weights": [1.0], "bias": [0.0]},
            {"kind": "relu", "weights": [1.0]},
        ],
    }
    with pytest.raises(sr.LoadError, match="layer 1"):
        sr.load_network(_write_doc(tmp_path, relu_with_params))


def test_load_rejects_wrong_format_version(tmp_path):
    with pytest.raises(sr.LoadError, match="format_version"):
        sr.load_network(_write_doc(tmp_path, {"format_version": 2, "input_dim": 1, "layers": []}))


def test_load_rejects_input_dim_mismatch(tmp_path):
    doc = {
        "format_version": 1,
        "input_dim": 3,
        "layers": [{"kind": "dense", "out": 1, "in": 2,
                    "weights": [1.0, 1.0], "bias": [0.0]}],
    }
    with pytest.raises(sr.LoadError, match="input_dim"):
        sr.load_network(_write_doc(tmp_path, doc))
