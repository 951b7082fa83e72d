"""Command line interface: JSON reports for the skein and lattice computations."""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from pathlib import Path
from typing import Any, Callable, Sequence

from . import ring
from .config import SkeinlabConfig
from .errors import SchemaError, SkeinlabError, VerificationError
from .lattice import STANDARD_SPINES, CiliatedGraph, admissible_colorings, pairing_matrix
from .logs import configure_logging
from .skein import LinkDiagram, bracket_reduce, multiply
from .tl import jones_wenzl
from .wilson import closure_routes, verify_isomorphism

logger = logging.getLogger(__name__)


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def compute_file_sha256(path: Path) -> str:
    h = hashlib.sha256()
    with path.open("rb") as f:
        for chunk in iter(lambda: f.read(1024 * 1024), b""):
            h.update(chunk)
    return h.hexdigest()


def parse_eval_point(raw: str) -> complex:
    try:
        re_part, im_part = (float(x) for x in raw.split(","))
    except ValueError as e:
        raise SchemaError("--eval", f"expected 're,im', got {raw!r}") from e
    return complex(re_part, im_part)


class Inputs:
    """Reads JSON inputs and remembers their digests for the manifest."""

    def __init__(self) -> None:
        self.digests: dict[str, str] = {}

    def load(self, raw: str) -> Any:
        path = Path(raw)
        if not path.exists():
            raise SchemaError(raw, "input file not found")
        self.digests[raw] = compute_file_sha256(path)
        try:
            return json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise SchemaError(raw, f"invalid JSON ({e.msg} at line {e.lineno})") from e

    def graph(self, raw: str) -> CiliatedGraph:
        if raw in STANDARD_SPINES and not Path(raw).exists():
            self.digests[raw] = sha256_text(canonical_json(STANDARD_SPINES[raw]().to_json()))
            return STANDARD_SPINES[raw]()
        return CiliatedGraph.from_json(self.load(raw))

    def link(self, raw: str) -> LinkDiagram:
        return LinkDiagram.from_json(self.load(raw))


def numeric_column(obj: Any, t0: complex, tolerance: float) -> Any:
    """Replace every exact scalar in a result by [re, im] at t = t0."""
    if isinstance(obj, dict):
        if set(obj) == {"num", "den"}:
            value = ring.evaluate(ring.from_json(obj), t0, tolerance)
            return [value.real, value.imag]
        return {k: numeric_column(v, t0, tolerance) for k, v in obj.items()}
    if isinstance(obj, list):
        return [numeric_column(v, t0, tolerance) for v in obj]
    return obj


def _is_scalar(obj: Any) -> bool:
    return isinstance(obj, dict) and set(obj) == {"num", "den"}


def _inline(obj: Any) -> str:
    if _is_scalar(obj):
        return ring.format_scalar(ring.from_json(obj))
    if isinstance(obj, list):
        return "[" + ", ".join(_inline(v) for v in obj) + "]"
    return json.dumps(obj)


def render_text(obj: Any, indent: int = 0) -> list[str]:
    """Indented ``key: value`` lines, exact scalars written as rational functions of t."""
    pad = " " * indent
    lines: list[str] = []
    for key in sorted(obj):
        value = obj[key]
        if isinstance(value, dict) and not _is_scalar(value):
            lines.append(f"{pad}{key}:")
            lines.extend(render_text(value, indent + 2))
        elif isinstance(value, list) and any(isinstance(v, dict) and not _is_scalar(v) for v in value):
            lines.append(f"{pad}{key}:")
            for item in value:
                if isinstance(item, dict) and not _is_scalar(item):
                    lines.append(f"{pad}  -")
                    lines.extend(render_text(item, indent + 4))
                else:
                    lines.append(f"{pad}  - {_inline(item)}")
        else:
            lines.append(f"{pad}{key}: {_inline(value)}")
    return lines


def handle_jw(args: argparse.Namespace, inputs: Inputs) -> dict[str, Any]:
    element = jones_wenzl(args.n)
    return {"n": args.n, "terms": len(element.terms), "element": element.to_json()}


def handle_bracket(args: argparse.Namespace, inputs: Inputs) -> dict[str, Any]:
    diagram = inputs.link(args.link)
    reduced = bracket_reduce(diagram)
    return {"crossings": diagram.crossing_count(), "skein": reduced.to_json()}


def handle_colorings(args: argparse.Namespace, inputs: Inputs) -> dict[str, Any]:
    colorings = admissible_colorings(inputs.graph(args.graph), args.max_color)
    return {"maxColor": args.max_color, "count": len(colorings), "colorings": [list(c) for c in colorings]}


def handle_pairing(args: argparse.Namespace, inputs: Inputs) -> dict[str, Any]:
    colorings, matrix = pairing_matrix(inputs.graph(args.graph), args.max_color)
    rows = [list(r) for r in matrix.to_list()]
    diagonal = all((i == j) == bool(v) for i, row in enumerate(rows) for j, v in enumerate(row))
    if not diagonal:
        raise VerificationError("pairing matrix is not diagonal with nonzero diagonal")
    return {
        "maxColor": args.max_color,
        "colorings": [list(c) for c in colorings],
        "matrix": [[ring.to_json(v) for v in row] for row in rows],
        "diagonal": diagonal,
    }


def handle_verify_iso(args: argparse.Namespace, inputs: Inputs) -> dict[str, Any]:
    report = verify_isomorphism(inputs.graph(args.graph), args.max_color, strict=not args.keep_going)
    return report.to_dict()


def handle_product(args: argparse.Namespace, inputs: Inputs) -> dict[str, Any]:
    first, second = inputs.link(args.first), inputs.link(args.second)
    if first.spine != second.spine:
        raise SchemaError("spine", "the two links live on different spines")
    product = multiply(bracket_reduce(first), bracket_reduce(second))
    return {"skein": product.to_json()}


def handle_closure(args: argparse.Namespace, inputs: Inputs) -> dict[str, Any]:
    routes = closure_routes(args.n)
    values = list(routes.values())
    agree = all(v == values[0] for v in values)
    if not agree:
        raise VerificationError("closure routes disagree", {"n": args.n})
    return {"n": args.n, "routes": {k: ring.to_json(v) for k, v in routes.items()}, "agree": agree}


HANDLERS: dict[str, Callable[[argparse.Namespace, Inputs], dict[str, Any]]] = {
    "jw": handle_jw,
    "bracket": handle_bracket,
    "colorings": handle_colorings,
    "pairing": handle_pairing,
    "verify-iso": handle_verify_iso,
    "product": handle_product,
    "closure": handle_closure,
}


def build_parser(config: SkeinlabConfig) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skeinlab",
        description="Exact Kauffman bracket skein and quantum lattice gauge computations.",
    )
    parser.add_argument("--eval", dest="eval_point", help="Add a numeric column at t = re,im.")
    parser.add_argument("--seed", type=int, default=config.seed, help="Recorded seed (default: %(default)s).")
    parser.add_argument("--out", help="Write the report here instead of stdout.")
    parser.add_argument("--verbose", "-v", action="count", default=0, help="Log progress to stderr.")
    parser.add_argument("--timing", action="store_true", help="Record wall-clock seconds in the manifest.")
    parser.add_argument("--pretty", action="store_true", help="Human-readable text instead of JSON.")
    subparsers = parser.add_subparsers(dest="command", required=True)

    jw_parser = subparsers.add_parser("jw", help="Jones-Wenzl idempotent as a sum of TL diagrams.")
    jw_parser.add_argument("n", type=int)

    bracket_parser = subparsers.add_parser("bracket", help="Bracket-reduce a link diagram to pass counts.")
    bracket_parser.add_argument("link", help="Link JSON file.")

    for name, text in (
        ("colorings", "Enumerate admissible colorings."),
        ("pairing", "Pair basis observables with detector connections."),
        ("verify-iso", "Check that phi_u maps the colored basis to a basis."),
    ):
        sub = subparsers.add_parser(name, help=text)
        sub.add_argument("graph", help="Graph JSON file or a standard spine name.")
        sub.add_argument("max_color", type=int, nargs="?", default=config.max_color)
        sub.add_argument("--max-color", dest="max_color_flag", type=int)
        if name == "verify-iso":
            sub.add_argument("--keep-going", action="store_true", help="Record failed checks instead of stopping.")

    product_parser = subparsers.add_parser("product", help="Skein product of two links (second on top).")
    product_parser.add_argument("first")
    product_parser.add_argument("second")

    closure_parser = subparsers.add_parser("closure", help="Closure of the n-th Jones-Wenzl idempotent three ways.")
    closure_parser.add_argument("n", type=int)
    return parser


def build_report(args: argparse.Namespace, config: SkeinlabConfig) -> dict[str, Any]:
    inputs = Inputs()
    started = time.perf_counter()
    result = HANDLERS[args.command](args, inputs)
    if args.eval_point:
        t0 = parse_eval_point(args.eval_point)
        result = {**result, "numeric": numeric_column(result, t0, config.eval_tolerance)}
    manifest: dict[str, Any] = {
        "command": args.command,
        "inputs": dict(sorted(inputs.digests.items())),
        "seed": args.seed,
        "resultSha256": sha256_text(canonical_json(result)),
    }
    if getattr(args, "max_color", None) is not None:
        manifest["maxColor"] = args.max_color
    if args.timing:
        manifest["wallClockSeconds"] = round(time.perf_counter() - started, 3)
    return {"command": args.command, "result": result, "manifest": manifest}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        config = SkeinlabConfig.from_env()
    except SkeinlabError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    parser = build_parser(config)
    args = parser.parse_args(argv)
    if getattr(args, "max_color_flag", None) is not None:
        args.max_color = args.max_color_flag
    level = {0: config.log_level, 1: "INFO"}.get(args.verbose, "DEBUG")
    configure_logging(level)
    try:
        report = build_report(args, config)
    except VerificationError as e:
        print(f"verification failed: {e}", file=sys.stderr)
        if e.details:
            print(canonical_json(e.details), file=sys.stderr)
        return 2
    except SkeinlabError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    if args.pretty:
        text = "\n".join(render_text(report)) + "\n"
    else:
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    result = report["result"]
    if args.command == "verify-iso" and not (result["invertible"] and result["homomorphism"]["ok"]):
        print("verification failed: see the report", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
