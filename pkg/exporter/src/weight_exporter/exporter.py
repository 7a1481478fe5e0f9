"""Checkpoint conversion into the neutral JSON weight format.

The exporter owns the transposition convention: weight matrices are always
emitted row-major as (out, in), whatever the source storage order, so the
consuming loader never special-cases provenance. Only dense and relu layers
are supported; anything else fails loudly, naming the layer.

Parity checking runs the source framework (torch, in float64) and an
independent numpy re-evaluation of the freshly written file side by side on
the manifest's sample inputs.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np
import torch

WEIGHT_FORMAT_VERSION = 1
PARITY_TOLERANCE = 1e-5


class ExportError(Exception):
    """Checkpoint, manifest, or layer-mapping problem."""


@dataclass
class ExportManifest:
    """What to export: the checkpoint, the layer mapping from source names
    to a dense/relu sequence, the output path, and parity-check inputs."""

    checkpoint: Path
    layers: list[dict]
    output: Path
    sample_inputs: np.ndarray


@dataclass
class ParityReport:
    """Outcome of the source-vs-export comparison."""

    per_sample_diff: list[float]
    max_abs_diff: float
    tolerance: float
    passed: bool
    output: Path
    report_path: Path


def read_manifest(path, checkpoint=None, output=None) -> ExportManifest:
    """Load a manifest file; `checkpoint` and `output` override its fields."""
    path = Path(path)
    if not path.exists():
        raise ExportError(f"manifest not found: {path}")
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ExportError(f"{path}: not valid JSON ({exc})") from exc
    if doc.get("format_version") != 1:
        raise ExportError(f"{path}: format_version must be 1")
    layers = doc.get("layers")
    if not isinstance(layers, list) or not layers:
        raise ExportError(f"{path}: 'layers' must be a nonempty array")
    samples = doc.get("sample_inputs")
    if not isinstance(samples, list) or not samples:
        raise ExportError(f"{path}: 'sample_inputs' must hold at least one input")
    checkpoint = checkpoint if checkpoint is not None else doc.get("checkpoint")
    output = output if output is not None else doc.get("output")
    if checkpoint is None:
        raise ExportError("no checkpoint path given (manifest field or --checkpoint)")
    if output is None:
        raise ExportError("no output path given (manifest field or --out)")

    def resolve(p):
        p = Path(p)
        return p if p.is_absolute() else path.parent / p

    return ExportManifest(
        checkpoint=resolve(checkpoint),
        layers=layers,
        output=resolve(output),
        sample_inputs=np.asarray(samples, dtype=np.float64),
    )


def load_state_dict(path) -> dict:
    path = Path(path)
    if not path.exists():
        raise ExportError(f"checkpoint not found: {path}")
    obj = torch.load(path, map_location="cpu", weights_only=False)
    if isinstance(obj, torch.nn.Module):
        obj = obj.state_dict()
    if not isinstance(obj, dict):
        raise ExportError(
            f"checkpoint must hold a state dict or module, got {type(obj).__name__}"
        )
    return obj


def _mapped_layers(manifest: ExportManifest, state: dict) -> list[dict]:
    """Resolve the manifest mapping against the checkpoint, validating the
    dimension chain. Returns serializable layer objects."""
    out_layers = []
    width = None
    for i, entry in enumerate(manifest.layers):
        if not isinstance(entry, dict) or "kind" not in entry:
            raise ExportError(f"layer {i}: mapping entries need a 'kind'")
        kind = entry["kind"]
        if kind == "relu":
            out_layers.append({"kind": "relu"})
            continue
        if kind != "dense":
            raise ExportError(f"layer {i}: unsupported layer type {kind!r}")
        source = entry.get("source")
        if not isinstance(source, str):
            raise ExportError(f"layer {i}: dense entries need a 'source' name")
        wkey, bkey = f"{source}.weight", f"{source}.bias"
        if wkey not in state:
            raise ExportError(f"layer {i} ({source}): checkpoint has no '{wkey}'")
        if bkey not in state:
            raise ExportError(f"layer {i} ({source}): checkpoint has no '{bkey}'")
        weight = state[wkey].detach().cpu()
        bias = state[bkey].detach().cpu()
        if weight.dim() != 2:
            raise ExportError(
                f"layer {i} ({source}): unsupported layer type, weight tensor has "
                f"{weight.dim()} dims (convolution?)"
            )
        out, fan_in = weight.shape
        if bias.shape != (out,):
            raise ExportError(f"layer {i} ({source}): bias shape {tuple(bias.shape)} "
                              f"does not match output width {out}")
        if width is not None and fan_in != width:
            raise ExportError(
                f"layer {i} ({source}): input width {fan_in} does not chain "
                f"with previous output width {width}"
            )
        width = out
        w64 = weight.to(torch.float64).numpy()
        b64 = bias.to(torch.float64).numpy()
        if not (np.isfinite(w64).all() and np.isfinite(b64).all()):
            raise ExportError(f"layer {i} ({source}): non-finite parameters")
        out_layers.append(
            {
                "kind": "dense",
                "out": int(out),
                "in": int(fan_in),
                "weights": [float(v) for v in w64.ravel()],
                "bias": [float(v) for v in b64],
            }
        )
    if width is None:
        raise ExportError("mapping contains no dense layers")
    return out_layers


def _source_forward(layer_docs: list[dict], x: np.ndarray) -> np.ndarray:
    """Forward pass in the source framework (torch, float64)."""
    modules = []
    for doc in layer_docs:
        if doc["kind"] == "relu":
            modules.append(torch.nn.ReLU())
        else:
            linear = torch.nn.Linear(doc["in"], doc["out"], dtype=torch.float64)
            with torch.no_grad():
                linear.weight.copy_(
                    torch.tensor(doc["weights"], dtype=torch.float64).reshape(
                        doc["out"], doc["in"]
                    )
                )
                linear.bias.copy_(torch.tensor(doc["bias"], dtype=torch.float64))
            modules.append(linear)
    model = torch.nn.Sequential(*modules)
    with torch.no_grad():
        return model(torch.from_numpy(x)).numpy()


def _reference_forward(weight_file: Path, x: np.ndarray) -> np.ndarray:
    """Independent numpy re-evaluation of the written weight file."""
    doc = json.loads(weight_file.read_text(encoding="utf-8"))
    out = np.asarray(x, dtype=np.float64)
    for layer in doc["layers"]:
        if layer["kind"] == "relu":
            out = np.maximum(out, 0.0)
        else:
            w = np.asarray(layer["weights"], dtype=np.float64).reshape(
                layer["out"], layer["in"]
            )
            b = np.asarray(layer["bias"], dtype=np.float64)
            out = out @ w.T + b
    return out


def export(manifest: ExportManifest) -> ParityReport:
    """Write the weight file and the parity report; the export is marked
    failed when the source and re-evaluated logits disagree beyond
    tolerance on any sample input."""
    state = load_state_dict(manifest.checkpoint)
    layer_docs = _mapped_layers(manifest, state)

    first_dense = next(d for d in layer_docs if d["kind"] == "dense")
    input_dim = first_dense["in"]
    samples = manifest.sample_inputs
    if samples.ndim != 2 or samples.shape[1] != input_dim:
        raise ExportError(
            f"sample_inputs shape {samples.shape} does not match the network "
            f"input width {input_dim}"
        )

    doc = {
        "format_version": WEIGHT_FORMAT_VERSION,
        "input_dim": input_dim,
        "layers": layer_docs,
    }
    manifest.output.parent.mkdir(parents=True, exist_ok=True)
    with open(manifest.output, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")

    source = _source_forward(layer_docs, samples)
    reference = _reference_forward(manifest.output, samples)
    per_sample = np.abs(source - reference).max(axis=1)
    max_diff = float(per_sample.max())
    passed = max_diff <= PARITY_TOLERANCE

    report_path = manifest.output.with_suffix(manifest.output.suffix + ".parity.txt")
    lines = [
        f"checkpoint: {manifest.checkpoint}",
        f"output: {manifest.output}",
        f"samples: {samples.shape[0]}",
    ]
    for i, d in enumerate(per_sample):
        lines.append(f"sample {i}: max_abs_logit_diff {d:.6e}")
    lines.append(f"max_abs_diff: {max_diff:.6e}")
    lines.append(f"tolerance: {PARITY_TOLERANCE:.0e}")
    lines.append(f"status: {'PASS' if passed else 'FAIL'}")
    report_path.write_text("\n".join(lines) + "\n", encoding="utf-8")

    return ParityReport(
        per_sample_diff=[float(v) for v in per_sample],
        max_abs_diff=max_diff,
        tolerance=PARITY_TOLERANCE,
        passed=passed,
        output=manifest.output,
        report_path=report_path,
    )
