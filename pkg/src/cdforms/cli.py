"""Command-line surface.

Subcommands: verify correspondence, verify cech-properties, integrate,
residue, pair, transfer, stokes, report.  Each command prints the report
as a JSON object followed by a human-readable summary; --json selects the
machine output alone.  Config precedence: flags > config file > defaults.
Exit codes: 0 all checks pass, 1 any failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cycles import (
    QuadratureSpec,
    RealSphere,
    Sphere,
    Torus,
    integrate,
)
from .forms import Form
from .hyper import (
    delta_form,
    delta_function,
    one_as_hyperfunction,
    pair,
    pair_on_ball,
    pairing_test_form,
)
from .kernels import make_Phi
from .parser import DimensionError, ParseError, parse_form
from .reports import CheckRecord, Report, error_record
from .suites import (
    STOKES_TOL,
    TRANSFER_TOL,
    full_report_records,
    stokes_records,
    transfer_records,
)

DEFAULTS = {
    "nodes": 64,
    "polar": 32,
    "radial": 32,
    "tol": 1e-8,
    "radius": 1.0,
    "seed": 0,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cdforms",
        description=(
            "Exact Cech-Dolbeault calculus: kernel identities, cycle "
            "integration, residues and hyperfunction pairings."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--nodes", type=int, help="trapezoid nodes per periodic angle")
        p.add_argument("--polar", type=int, help="Gauss-Legendre nodes per polar angle")
        p.add_argument("--radial", type=int, help="Gauss-Legendre nodes per radius")
        p.add_argument("--tol", type=float, help="numeric tolerance")
        p.add_argument("--radius", type=float, help="sphere/torus radius")
        p.add_argument("--seed", type=int, help="seed for randomized suites")
        p.add_argument("--config", help="JSON config file (flags take precedence)")
        p.add_argument("--json", action="store_true", help="machine output only")

    p = sub.add_parser("verify", help="run an exact verification suite")
    p.add_argument("what", choices=["correspondence", "cech-properties"])
    p.add_argument("--n", type=int, required=True, help="complex dimension")
    common(p)

    p = sub.add_parser("integrate", help="integrate a form expression over a cycle")
    p.add_argument("--cycle", choices=["sphere", "torus"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--form", required=True, help="expression, e.g. 'beta(2)'")
    common(p)

    p = sub.add_parser("residue", help="local residue of h against the Cauchy kernel")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--h", required=True, help="polynomial expression")
    common(p)

    p = sub.add_parser("pair", help="hyperfunction duality pairing")
    p.add_argument("--dist", choices=["delta", "delta-form", "one"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--h", required=True, help="polynomial expression")
    common(p)

    p = sub.add_parser("transfer", help="sphere/torus transfer identity")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--h", help="polynomial expression (default: built-in suite)")
    common(p)

    p = sub.add_parser("stokes", help="stokes pairing identity")
    p.add_argument("--n", type=int, required=True)
    common(p)

    p = sub.add_parser("report", help="run the full verification report")
    p.add_argument("--all", action="store_true", required=True)
    common(p)

    return parser


def resolve_config(args):
    config = dict(DEFAULTS)
    path = getattr(args, "config", None)
    if path:
        with open(path) as fh:
            loaded = json.load(fh)
        for key in DEFAULTS:
            if key in loaded:
                config[key] = loaded[key]
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            config[key] = value
    return config


def spec_from_config(config, doubling=True):
    return QuadratureSpec(
        nodes_periodic=config["nodes"],
        nodes_polar=config["polar"],
        nodes_radial=config["radial"],
        tol=config["tol"],
        doubling=doubling,
    )


def _value_record(name, result, detail=""):
    return CheckRecord(
        name=name,
        status="pass",
        mode="numeric",
        detail=detail,
        value=result.value,
        error_estimate=result.error_estimate,
    )


def cmd_verify(args, config):
    from .kernels import verify_correspondence
    from .properties import property_suite

    if args.what == "correspondence":
        records = verify_correspondence(args.n)
        return Report(f"verify correspondence --n {args.n}", {}, records)
    records = property_suite(args.n, config["seed"])
    return Report(
        f"verify cech-properties --n {args.n} --seed {config['seed']}",
        {"seed": config["seed"]},
        records,
    )


def cmd_integrate(args, config):
    command = f"integrate --cycle {args.cycle} --n {args.n} --form {args.form!r}"
    report = Report(command, _echo(config))
    space = "real" if "psi(" in args.form.replace(" ", "") else "complex"
    try:
        form = parse_form(args.form, args.n, space)
    except (ParseError, DimensionError) as exc:
        _usage_error(exc)
    if args.cycle == "torus":
        if space == "real":
            report.records.append(
                error_record(command, ValueError("the torus needs a complex form"))
            )
            return report
        cycle = Torus((config["radius"],) * args.n)
    elif space == "real":
        cycle = RealSphere(config["radius"], args.n)
    else:
        cycle = Sphere(config["radius"], args.n)
    spec = spec_from_config(config)
    try:
        result = integrate(form, cycle, spec)
    except Exception as exc:
        report.records.append(error_record(command, exc))
        return report
    report.records.append(_value_record(f"integral of {args.form} over the {args.cycle}", result))
    return report


def cmd_residue(args, config):
    from .kernels import cauchy

    command = f"residue --n {args.n} --h {args.h!r}"
    report = Report(command, _echo(config))
    try:
        h = parse_form(args.h, args.n, "complex")
    except (ParseError, DimensionError) as exc:
        _usage_error(exc)
    spec = spec_from_config(config)
    try:
        result = integrate(
            h.wedge(cauchy(args.n)), Torus((config["radius"],) * args.n), spec
        )
    except Exception as exc:
        report.records.append(error_record(command, exc))
        return report
    report.records.append(
        _value_record(f"local residue of {args.h} at the origin", result)
    )
    return report


def cmd_pair(args, config):
    command = f"pair --dist {args.dist} --n {args.n} --h {args.h!r}"
    report = Report(command, _echo(config))
    try:
        h = parse_form(args.h, args.n, "complex")
    except (ParseError, DimensionError) as exc:
        _usage_error(exc)
    spec = spec_from_config(config, doubling=False)
    try:
        if args.dist == "delta":
            result = pair(
                delta_function(args.n),
                h.wedge(make_Phi(args.n)),
                radius=config["radius"],
                spec=spec,
            )
            detail = ""
        elif args.dist == "delta-form":
            result = pair(
                delta_form(args.n), h, radius=config["radius"], spec=spec
            )
            detail = ""
        else:
            result = pair_on_ball(
                one_as_hyperfunction(args.n),
                h.wedge(make_Phi(args.n)),
                radius=config["radius"],
                spec=spec,
            )
            detail = (
                "ball-local pairing of a representative without compact support"
            )
    except Exception as exc:
        report.records.append(error_record(command, exc))
        return report
    report.records.append(
        _value_record(f"<{args.dist}, {args.h} Phi>", result, detail=detail)
    )
    return report


def cmd_transfer(args, config):
    command = f"transfer --n {args.n}" + (f" --h {args.h!r}" if args.h else "")
    report = Report(command, _echo(config))
    if args.h is None:
        report.extend(transfer_records((args.n,)))
        return report
    try:
        h = parse_form(args.h, args.n, "complex")
    except (ParseError, DimensionError) as exc:
        _usage_error(exc)
    from .cycles import transfer_check
    from .reports import numeric_record

    try:
        res = transfer_check(args.n, h, spec_from_config(config, doubling=False))
    except Exception as exc:
        report.records.append(error_record(command, exc))
        return report
    report.records.append(
        numeric_record(
            f"transfer identity n={args.n}, h = {args.h}",
            res.lhs,
            res.rhs,
            max(config["tol"], TRANSFER_TOL),
        )
    )
    return report


def cmd_stokes(args, config):
    command = f"stokes --n {args.n}"
    report = Report(command, _echo(config))
    if args.n not in (1, 2):
        _usage_error(ValueError("stokes configurations exist for n in {1, 2}"))
    report.extend(stokes_records((args.n,)))
    return report


def cmd_report(args, config):
    report = Report("report --all", _echo(config))
    report.extend(full_report_records(seed=config["seed"]))
    return report


def _echo(config):
    return {
        "nodes": config["nodes"],
        "polar": config["polar"],
        "radial": config["radial"],
        "tol": config["tol"],
        "radius": config["radius"],
        "seed": config["seed"],
    }


def _usage_error(exc):
    print(f"cdforms: {exc}", file=sys.stderr)
    raise SystemExit(2)


HANDLERS = {
    "verify": cmd_verify,
    "integrate": cmd_integrate,
    "residue": cmd_residue,
    "pair": cmd_pair,
    "transfer": cmd_transfer,
    "stokes": cmd_stokes,
    "report": cmd_report,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    config = resolve_config(args)
    report = HANDLERS[args.command](args, config)
    print(report.to_json())
    if not args.json:
        print(report.render_text())
    return report.exit_code()


if __name__ == "__main__":
    raise SystemExit(main())
