"""Command-line front end.

Exit status: 0 on success, 1 on domain/format errors (error class name on
stderr), 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import composite, graph, image, io, scalar, vector
from .errors import DomainError, EncodingError, FormatError
from .result import EncodingResult


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _finish(res: EncodingResult, args) -> int:
    if getattr(args, "circuit", None):
        if res.circuit is None:
            raise DomainError(f"no preparation circuit available for {res.meta.get('method')}")
        Path(args.circuit).write_text(res.circuit.to_text(), encoding="utf-8")
    _emit(res.to_json() + "\n", args.output)
    return 0


def _load_result(path: str) -> EncodingResult:
    try:
        return EncodingResult.from_json(_read(path))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc.msg})") from exc


def _angle(x: float, unit: str) -> float:
    return scalar.degrees_to_radians(x) if unit == "degrees" else x


# --- subcommands --------------------------------------------------------------


def cmd_encode_number(args) -> int:
    if args.basis is not None:
        if args.bits is None:
            args.parser.error("--basis needs --bits")
        res = scalar.encode_basis_integer(args.basis, args.bits)
    elif args.angle is not None:
        res = scalar.encode_angle(_angle(args.angle, args.unit))
    elif args.complex is not None:
        re_, im_ = args.complex
        res = scalar.encode_complex(_angle(complex(re_, im_), args.unit))
    else:
        if args.int_bits is None or args.frac_bits is None:
            args.parser.error("--fixed needs --int-bits and --frac-bits")
        res = scalar.encode_fixed_point(args.fixed, args.int_bits, args.frac_bits)
    return _finish(res, args)


def cmd_encode_vector(args) -> int:
    x = io.parse_csv_vector(_read(args.file))
    res = vector.encode_angle_vector(x) if args.method == "angle" else vector.encode_amplitude(x)
    return _finish(res, args)


def cmd_encode_image(args) -> int:
    img = io.parse_pgm(_read(args.file))
    return _finish(image.ENCODERS[args.method](img), args)


def cmd_encode_timeseries(args) -> int:
    table = io.parse_csv_table(_read(args.file))
    return _finish(vector.encode_timeseries(table), args)


def cmd_encode_graph(args) -> int:
    g = io.parse_edge_list(_read(args.file))
    return _finish(graph.graph_state(g), args)


def cmd_compose(args) -> int:
    weights = None
    if args.kind == "sum" and args.weights:
        try:
            weights = [float(w) for w in args.weights.split(",")]
        except ValueError:
            args.parser.error("--weights must be comma-separated numbers")
    parts = [_load_result(p) for p in args.files]
    if args.kind == "product":
        res = composite.product_encode(parts)
    else:
        res = composite.sum_encode(parts, weights)
    _emit(res.to_json() + "\n", args.output)
    return 0


def cmd_decode_image(args) -> int:
    res = _load_result(args.file)
    state, meta = res.state, res.meta
    shots_used = None
    if args.method == "neqr":
        if args.shots:
            px, shots_used = image.neqr_decode_sampled(state, meta, args.seed, args.shots)
        else:
            px = image.neqr_decode_exact(state, meta)
        depth = state.layout.labels.count("color")
    else:
        if args.shots:
            px, shots_used = image.frqi_decode_sampled(state, meta, args.shots, args.seed)
        else:
            px = image.frqi_decode_exact(state, meta)
        depth = int(meta.get("depth", 8))
    if shots_used is not None:
        print(f"shots: {shots_used}", file=sys.stderr)
    _emit(io.format_pgm(image.Image(px, depth)), args.output)
    return 0


def cmd_transform_qft2d(args) -> int:
    res = _load_result(args.file)
    out = image.qpie_qft2d(res.state)
    meta = dict(res.meta, method="qpie-qft2d")
    _emit(EncodingResult(out, None, meta).to_json() + "\n", args.output)
    return 0


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qencode", description="Encode classical data as quantum states.")
    sub = p.add_subparsers(dest="command", required=True)

    def out_opts(sp, circuit=True):
        sp.add_argument("-o", "--output", help="write JSON here instead of stdout")
        if circuit:
            sp.add_argument("--circuit", metavar="OUT.qc", help="write the preparation circuit")

    enc = sub.add_parser("encode").add_subparsers(dest="what", required=True)

    num = enc.add_parser("number")
    g = num.add_mutually_exclusive_group(required=True)
    g.add_argument("--basis", type=int, metavar="X")
    g.add_argument("--angle", type=float, metavar="X")
    g.add_argument("--complex", type=float, nargs=2, metavar=("RE", "IM"))
    g.add_argument("--fixed", type=float, metavar="X")
    num.add_argument("--bits", type=int)
    num.add_argument("--int-bits", type=int)
    num.add_argument("--frac-bits", type=int)
    num.add_argument("--unit", choices=("radians", "degrees"), default="radians")
    out_opts(num)
    num.set_defaults(func=cmd_encode_number, parser=num)

    vec = enc.add_parser("vector")
    vec.add_argument("--method", choices=("angle", "amplitude"), required=True)
    vec.add_argument("file")
    out_opts(vec)
    vec.set_defaults(func=cmd_encode_vector)

    img = enc.add_parser("image")
    img.add_argument("--method", choices=tuple(image.ENCODERS), required=True)
    img.add_argument("file")
    out_opts(img)
    img.set_defaults(func=cmd_encode_image)

    ts = enc.add_parser("timeseries")
    ts.add_argument("file")
    out_opts(ts)
    ts.set_defaults(func=cmd_encode_timeseries)

    gr = enc.add_parser("graph")
    gr.add_argument("file")
    out_opts(gr)
    gr.set_defaults(func=cmd_encode_graph)

    comp = sub.add_parser("compose").add_subparsers(dest="kind", required=True)
    prod = comp.add_parser("product")
    prod.add_argument("files", nargs="+")
    out_opts(prod, circuit=False)
    prod.set_defaults(func=cmd_compose, parser=prod)
    sm = comp.add_parser("sum")
    sm.add_argument("--weights")
    sm.add_argument("files", nargs="+")
    out_opts(sm, circuit=False)
    sm.set_defaults(func=cmd_compose, parser=sm)

    dec = sub.add_parser("decode").add_subparsers(dest="what", required=True)
    di = dec.add_parser("image")
    di.add_argument("--method", choices=("neqr", "frqi"), required=True)
    di.add_argument("--shots", type=int, default=0,
                    help="sample instead of exact readout (NEQR: shot cap)")
    di.add_argument("--seed", type=int)
    di.add_argument("file")
    di.add_argument("-o", "--output", help="write PGM here instead of stdout")
    di.set_defaults(func=cmd_decode_image, parser=di)

    tr = sub.add_parser("transform").add_subparsers(dest="what", required=True)
    q = tr.add_parser("qft2d")
    q.add_argument("file")
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_transform_qft2d)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "shots", 0):
        if args.shots < 0:
            args.parser.error("--shots must be positive")
        if args.seed is None:
            args.parser.error("--seed is required when --shots is given")
    try:
        return args.func(args)
    except EncodingError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (OSError, UnicodeDecodeError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
