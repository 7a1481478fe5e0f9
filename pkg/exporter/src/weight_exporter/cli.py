"""Command line: export --checkpoint <path> --manifest <path> --out <path>."""
from __future__ import annotations

import argparse
import sys

from .exporter import ExportError, export, read_manifest


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="export",
        description="Convert a torch dense-ReLU checkpoint into the neutral "
                    "JSON weight format, with a source-vs-export parity check.",
    )
    parser.add_argument("--checkpoint", default=None,
                        help="torch checkpoint (state dict or module)")
    parser.add_argument("--manifest", required=True,
                        help="manifest JSON with the layer mapping and sample inputs")
    parser.add_argument("--out", default=None, help="output weight file path")
    args = parser.parse_args(argv)
    try:
        manifest = read_manifest(args.manifest, checkpoint=args.checkpoint,
                                 output=args.out)
        report = export(manifest)
    except ExportError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {report.output}")
    print(f"parity: max abs logit diff {report.max_abs_diff:.3e} "
          f"({'PASS' if report.passed else 'FAIL'}, tolerance {report.tolerance:.0e})")
    print(f"report: {report.report_path}")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
