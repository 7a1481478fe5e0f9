"""Exporter acceptance: parity on a two-hidden-layer classifier and
agreement between the verification tool's forward pass and the parity
reference."""
import json

import numpy as np
import torch

import statrob as sr
from weight_exporter import export, read_manifest
from weight_exporter.exporter import _source_forward


def test_classifier_export_parity_and_tool_agreement(tmp_path):
    torch.manual_seed(2024)
    model = torch.nn.Sequential(
        torch.nn.Linear(784, 256),
        torch.nn.ReLU(),
        torch.nn.Linear(256, 256),
        torch.nn.ReLU(),
        torch.nn.Linear(256, 10),
    )
    ckpt = tmp_path / "classifier.pt"
    torch.save(model.state_dict(), ckpt)

    rng = np.random.default_rng(42)
    samples = rng.uniform(0.0, 1.0, size=(10, 784))
    doc = {
        "format_version": 1,
        "checkpoint": "classifier.pt",
        "output": "classifier_weights.json",
        "layers": [
            {"kind": "dense", "source": "0"},
            {"kind": "relu"},
            {"kind": "dense", "source": "2"},
            {"kind": "relu"},
            {"kind": "dense", "source": "4"},
        ],
        "sample_inputs": samples.tolist(),
    }
    manifest_path = tmp_path / "manifest.json"
    manifest_path.write_text(json.dumps(doc))

    manifest = read_manifest(manifest_path)
    report = export(manifest)
    assert report.passed
    assert report.max_abs_diff <= 1e-5

    # the primary tool's forward on the exported file matches the source
    # logits from the parity check
    layer_docs = json.loads(report.output.read_text())["layers"]
    source_logits = _source_forward(layer_docs, samples)
    net = sr.load_network(report.output)
    tool_logits = net.forward(samples)
    gap = np.abs(tool_logits - source_logits).max()
    assert gap <= 1e-5

    # class inference agrees with the source framework's argmax
    for i in range(samples.shape[0]):
        assert sr.infer_true_class(net, samples[i]) == int(np.argmax(source_logits[i]))

    print(f"ACCEPTANCE criterion-10 PASS: exporter parity {report.max_abs_diff:.2e}, "
          f"tool agreement {gap:.2e} (tolerance 1e-5)")
