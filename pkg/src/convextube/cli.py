"""Command-line experiment runner: dispatches to the library modules and
emits versioned CSV/JSON artifacts with fixed 9-significant-digit formatting
so identical configs reproduce byte-identical output."""

import argparse
import hashlib
import json
import os
import sys

import numpy as np

from . import __version__
from .bodies import BUILTIN_NAMES, NotInterior, body_from_spec, make_builtin
from .hilbert import HilbertGeometry
from .hyperbolicity import delta_scaling_profile
from .kobayashi import IntervalInversion, kobayashi_interval
from .rescaling import (BlowupSpec, blowup_sequence, limit_strictness_verdict,
                        orbit_limit)
from .tubes import (DashboardConfig, EmbeddingExperiment, TubeDomain,
                    asym_embedding_experiment, default_bidisk_grid,
                    flat_embedding_profile, theorem1_dashboard)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


class ConfigError(ValueError):
    pass


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return "%.9g" % v
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return str(v)


def parse_body(text, flag):
    """builtin:NAME, bare builtin name, inline JSON, or @path to a JSON file."""
    if text is None:
        raise ConfigError(f"missing required flag {flag}")
    try:
        if text.startswith("builtin:"):
            return make_builtin(text[len("builtin:"):])
        if text in BUILTIN_NAMES:
            return make_builtin(text)
        if text.startswith("@"):
            with open(text[1:]) as fh:
                return body_from_spec(json.load(fh))
        if text.lstrip().startswith("{"):
            return body_from_spec(json.loads(text))
    except (ValueError, OSError) as e:
        raise ConfigError(f"{flag}: {e}") from e
    raise ConfigError(
        f"{flag}: expected builtin:NAME, inline JSON, or @file.json; "
        f"valid builtins: {', '.join(BUILTIN_NAMES)}")


def parse_floats(text, flag):
    try:
        return [float(t) for t in text.split(",") if t != ""]
    except ValueError as e:
        raise ConfigError(f"{flag}: {e}") from e


def parse_complexes(text, flag):
    try:
        return np.array([complex(t) for t in text.split(",") if t != ""])
    except ValueError as e:
        raise ConfigError(f"{flag}: expected comma-separated complex numbers "
                          f"like 0.5,0.1+0.2j ({e})") from e


def _config_hash(args):
    blob = json.dumps({k: v for k, v in sorted(vars(args).items())
                       if k not in ("output", "func")}, default=str)
    return hashlib.sha256(blob.encode()).hexdigest()[:12]


def _out_path(args, default_name):
    if args.output:
        return args.output
    outdir = os.environ.get("CONVEXTUBE_OUTDIR", ".")
    return os.path.join(outdir, default_name + "." + args.format)


def write_output(args, default_name, header, rows, extra=None):
    """rows: list of value tuples; extra: trailing scalar fields."""
    seed = getattr(args, "seed", None)
    meta = f"version={__version__} seed={seed} config={_config_hash(args)}"
    path = _out_path(args, default_name)
    if args.format == "csv":
        lines = ["# " + meta, ",".join(header)]
        lines += [",".join(_fmt(v) for v in row) for row in rows]
        if extra:
            for k, v in extra.items():
                lines.append(f"# {k}={_fmt(v)}")
        text = "\n".join(lines) + "\n"
    else:
        doc = {"meta": {"version": __version__, "seed": seed,
                        "config": _config_hash(args)},
               "rows": [dict(zip(header, [json.loads(_fmt(v))
                                          if not isinstance(v, str) else v
                                          for v in row])) for row in rows]}
        if extra:
            doc.update({k: json.loads(_fmt(v)) if not isinstance(v, str) else v
                        for k, v in extra.items()})
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    with open(path, "w") as fh:
        fh.write(text)
    return path


def cmd_hilbert_dist(args):
    body = parse_body(args.body, "--body")
    x = parse_floats(args.x, "--x")
    y = parse_floats(args.y, "--y")
    d = HilbertGeometry(body).distance(x, y)
    path = write_output(args, "hilbert-dist", ["distance"], [(float(d),)])
    print(f"hilbert distance = {_fmt(float(d))}  ({path})")
    return EXIT_OK


def cmd_delta_profile(args):
    body = parse_body(args.body, "--body")
    scales = parse_floats(args.scales, "--scales")
    prof = delta_scaling_profile(body, body.interior_point(), scales,
                                 n_points=args.points,
                                 n_quadruples=args.quadruples, seed=args.seed)
    rows = [(r.scale, r.n_points, r.n_quadruples, r.alpha_lo, r.alpha_hi)
            for r in prof.rows]
    path = write_output(args, "delta-profile",
                        ["scale", "n_points", "n_quadruples", "alpha_lo", "alpha_hi"],
                        rows, extra={"slope": prof.slope})
    print(f"profile slope = {_fmt(prof.slope)} over {len(rows)} scales  ({path})")
    return EXIT_OK


def cmd_orbit_limit(args):
    body = parse_body(args.body, "--body")
    target = parse_floats(args.target, "--target")
    rates = parse_floats(args.rates, "--rates")
    spec = BlowupSpec(body, np.asarray(target), rates,
                      normalization=args.normalization, seed=args.seed)
    seq = [pb for _, pb in blowup_sequence(spec)]
    lim = orbit_limit(seq, args.radius, tol=args.tol)
    verdict = limit_strictness_verdict(lim.limit, args.tol)
    rows = [(r, c) for r, c in zip(rates[1:], lim.consecutive)]
    wl = 0.0 if verdict.witness is None else verdict.witness.length
    path = write_output(args, "orbit-limit", ["rate", "hausdorff_step"], rows,
                        extra={"cauchy": lim.cauchy, "strict": verdict.strict,
                               "witness_length": wl})
    print(f"cauchy={verdict.strict and lim.cauchy or lim.cauchy} "
          f"strict={verdict.strict} witness_length={_fmt(wl)}  ({path})")
    return EXIT_OK


def cmd_koba_interval(args):
    base = parse_body(args.base, "--base")
    z = parse_complexes(args.z, "--z")
    w = parse_complexes(args.w, "--w")
    om = TubeDomain(base).complex_domain()
    iv = kobayashi_interval(om, z, w, n_functionals=args.functionals,
                            chain_steps=args.chain_steps, seed=args.seed)
    path = write_output(args, "koba-interval", ["lo", "hi", "width"],
                        [(iv.lo, iv.hi, iv.width)])
    print(f"kobayashi in [{_fmt(iv.lo)}, {_fmt(iv.hi)}]  ({path})")
    return EXIT_OK


def cmd_tube_flat(args):
    base = parse_body(args.base, "--base")
    T_values = parse_floats(args.T, "--T")
    tube = TubeDomain(base)
    c0 = base.interior_point()
    u = np.zeros(base.dim)
    u[0] = 1.0
    prof = flat_embedding_profile(tube, c0, u, T_values,
                                  chain_steps=args.chain_steps, seed=args.seed)
    rows = [(r.T, r.lo, r.hi, r.lo_ratio, r.hi_ratio) for r in prof.rows]
    path = write_output(args, "tube-flat",
                        ["T", "lo", "hi", "lo_ratio", "hi_ratio"], rows,
                        extra={"band_lo": prof.band[0], "band_hi": prof.band[1],
                               "quasi_isometric": prof.quasi_isometric})
    print(f"ratio band [{_fmt(prof.band[0])}, {_fmt(prof.band[1])}] "
          f"quasi_isometric={prof.quasi_isometric}  ({path})")
    return EXIT_OK


def cmd_asym_embed(args):
    n_values = [int(n) for n in parse_floats(args.n, "--n")]
    exp = EmbeddingExperiment(n_values, default_bidisk_grid())
    rows = asym_embedding_experiment(exp)
    path = write_output(args, "asym-embed", ["n", "sup_error"],
                        [(n, e) for n, e in rows])
    print("  ".join(f"e_{n}={_fmt(e)}" for n, e in rows) + f"  ({path})")
    return EXIT_OK


def cmd_dashboard(args):
    base = parse_body(args.base, "--base")
    cfg = DashboardConfig(seed=args.seed)
    rep = theorem1_dashboard(base, cfg)
    doc = rep.to_dict()
    rows = [(k, json.dumps(v) if isinstance(v, (list, dict)) else v)
            for k, v in doc.items()]
    path = write_output(args, "dashboard", ["indicator", "value"], rows)
    print(f"hilbert_hyperbolic={doc['hilbert_hyperbolic']} "
          f"flat_quasi_isometric={doc['flat_quasi_isometric']} "
          f"limits_all_strict={doc['limits_all_strict']} "
          f"hypotheses_met={doc['hypotheses_met']}  ({path})")
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(
        prog="convextube",
        description="Hilbert/Kobayashi metric experiments on convex bodies "
                    "and tube domains")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed_required):
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--output", default=None,
                        help="output file (default: CONVEXTUBE_OUTDIR or cwd)")
        if seed_required:
            sp.add_argument("--seed", type=int, required=True,
                            help="seed (required: this mode samples)")

    sp = sub.add_parser("hilbert-dist", help="Hilbert distance between two points")
    sp.add_argument("--body", required=True)
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)
    common(sp, seed_required=False)
    sp.set_defaults(func=cmd_hilbert_dist)

    sp = sub.add_parser("delta-profile", help="four-point alpha vs. scale")
    sp.add_argument("--body", required=True)
    sp.add_argument("--scales", default="1,2,3,4,5,6")
    sp.add_argument("--points", type=int, default=48)
    sp.add_argument("--quadruples", type=int, default=10000)
    common(sp, seed_required=True)
    sp.set_defaults(func=cmd_delta_profile)

    sp = sub.add_parser("orbit-limit", help="blow-up limit and strictness verdict")
    sp.add_argument("--body", required=True)
    sp.add_argument("--target", required=True)
    sp.add_argument("--rates", default="2,4,8,16")
    sp.add_argument("--normalization", choices=("none", "john"), default="none")
    sp.add_argument("--radius", type=float, default=2.0)
    sp.add_argument("--tol", type=float, default=1e-6)
    common(sp, seed_required=True)
    sp.set_defaults(func=cmd_orbit_limit)

    sp = sub.add_parser("koba-interval", help="certified Kobayashi interval on a tube")
    sp.add_argument("--base", required=True)
    sp.add_argument("--z", required=True)
    sp.add_argument("--w", required=True)
    sp.add_argument("--functionals", type=int, default=32)
    sp.add_argument("--chain-steps", type=int, default=16)
    common(sp, seed_required=True)
    sp.set_defaults(func=cmd_koba_interval)

    sp = sub.add_parser("tube-flat", help="flat-fiber embedding profile")
    sp.add_argument("--base", required=True)
    sp.add_argument("--T", default="1,2,4,8")
    sp.add_argument("--chain-steps", type=int, default=16)
    common(sp, seed_required=True)
    sp.set_defaults(func=cmd_tube_flat)

    sp = sub.add_parser("asym-embed", help="bidisk-into-square-tube error decay")
    sp.add_argument("--n", default="4,16,64,256")
    common(sp, seed_required=False)
    sp.set_defaults(func=cmd_asym_embed)

    sp = sub.add_parser("dashboard", help="hypothesis indicators for a bounded base")
    sp.add_argument("--base", required=True)
    common(sp, seed_required=True)
    sp.set_defaults(func=cmd_dashboard)

    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except IntervalInversion as e:
        print(f"numerical contract violation: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ConfigError, NotInterior, ValueError) as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
