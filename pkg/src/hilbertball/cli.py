"""Command-line surface.

Subcommands: distance, evolve, star, norm, verify.  Vectors and
operators travel in the shared JSON matrix format; trajectories leave as
CSV.  Every command is deterministic given its flags and seed, floats
print with 17 significant digits, and the exit code tells the caller
what went wrong: 0 success, 1 verification failure, 2 unparseable
input, 3 domain violation.
"""

import argparse
import math
import sys

from . import algebra, dynamics, geometry, serialize, verify
from .errors import DomainError, ParseError
from .isometries import ExtendedOperator
from .numerics import op_norm


def _parse_float(text, what):
    try:
        return float(text)
    except (TypeError, ValueError):
        raise ParseError(f"{what} must be a decimal number, got {text!r}")


def _parse_int(text, what):
    try:
        return int(text)
    except (TypeError, ValueError):
        raise ParseError(f"{what} must be an integer, got {text!r}")


def _load_point(path):
    return geometry.BallPoint(serialize.load_vector(path))


def _emit(doc):
    sys.stdout.write(serialize.dumps(doc))
    sys.stdout.write("\n")


def cmd_distance(args):
    u = _load_point(args.u_file)
    v = _load_point(args.v_file)
    d = geometry.distance(u, v)
    th = geometry.tanh_distance(u, v)
    _emit({"distance": d, "tanh_distance": th, "difference": abs(math.tanh(d) - th)})
    return 0


def _build_generator(args):
    if args.mode == "disc":
        a = _parse_float(args.a, "--a")
        b = complex(_parse_float(args.b_re, "--b-re"), _parse_float(args.b_im, "--b-im"))
        return dynamics.DiscGenerator(a, b)
    if args.mode == "schrodinger":
        if not args.hamiltonian:
            raise ParseError("schrodinger mode needs --hamiltonian")
        H = serialize.load_matrix(args.hamiltonian)
        return dynamics.HamiltonianGenerator(H, a=_parse_float(args.a, "--a"))
    if not args.generator:
        raise ParseError("exp mode needs --generator")
    return ExtendedOperator(serialize.load_matrix(args.generator))


def cmd_evolve(args):
    gen = _build_generator(args)
    z0 = _load_point(args.state)
    t_max = _parse_float(args.t_max, "--t-max")
    dt = _parse_float(args.dt, "--dt")
    samples = dynamics.trajectory(gen, z0, t_max, dt)
    text = serialize.trajectory_csv(samples)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fp:
            fp.write(text)
        _emit(
            {
                "samples": len(samples),
                "max_norm": max(p.norm() for _, p in samples),
                "out": args.out,
            }
        )
    else:
        sys.stdout.write(text)
    return 0


def cmd_star(args):
    left = ExtendedOperator(serialize.load_matrix(args.left))
    right = ExtendedOperator(serialize.load_matrix(args.right))
    product = algebra.star_operator(left, right)
    doc = serialize.matrix_to_json(product.matrix)
    if args.out:
        serialize.save_matrix(args.out, product.matrix)
    if args.state:
        z = _load_point(args.state)
        via_operator = algebra.evaluate(product, z)
        pointwise = algebra.star_pointwise(left, right, z)
        _emit(
            {
                "value": [via_operator.real, via_operator.imag],
                "pointwise": [pointwise.real, pointwise.imag],
                "difference": abs(via_operator - pointwise),
            }
        )
    elif not args.out:
        _emit(doc)
    return 0


def cmd_norm(args):
    C = ExtendedOperator(serialize.load_matrix(args.operator))
    samples = _parse_int(args.samples, "--samples")
    seed = _parse_int(args.seed, "--seed")
    if args.which == "b":
        est = algebra.norm_b(C, samples=samples, seed=seed)
        oracle = op_norm(C.matrix)
        gap = (oracle - est) / oracle if oracle > 0.0 else 0.0
        _emit({"which": "b", "estimate": est, "oracle_op_norm": oracle, "gap": gap})
    elif args.which == "s":
        _emit({"which": "s", "estimate": algebra.norm_s(C, samples=samples, seed=seed)})
    else:
        _emit({"which": "d", "estimate": algebra.norm_d(C, samples=samples, seed=seed)})
    return 0


def cmd_verify(args):
    cfg = verify.VerifyConfig(
        dim=_parse_int(args.dim, "--dim"),
        trials=_parse_int(args.trials, "--trials"),
        seed=_parse_int(args.seed, "--seed"),
        tol_scale=_parse_float(args.tol, "--tol"),
    )
    report = verify.run_suite(args.suite, cfg)
    text = serialize.dumps(report)
    sys.stdout.write(text)
    sys.stdout.write("\n")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fp:
            fp.write(text)
            fp.write("\n")
    if not report["passed"]:
        names = ", ".join(report["failed_properties"])
        print(f"verification failed: {names}", file=sys.stderr)
        return 1
    return 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="hilbertball",
        description="Hyperbolic-ball state space: distances, flows, the "
        "operator function algebra, and its verification suite.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("distance", help="distance between two stored points")
    d.add_argument("u_file")
    d.add_argument("v_file")
    d.set_defaults(func=cmd_distance)

    e = sub.add_parser("evolve", help="emit a flow trajectory as CSV")
    e.add_argument("mode", choices=["disc", "schrodinger", "exp"])
    e.add_argument("--state", required=True, help="initial point (JSON vector)")
    e.add_argument("--t-max", required=True, dest="t_max")
    e.add_argument("--dt", required=True)
    e.add_argument("--a", default="0", help="disc rotation / phase parameter")
    e.add_argument("--b-re", default="0", dest="b_re")
    e.add_argument("--b-im", default="0", dest="b_im")
    e.add_argument("--hamiltonian", help="JSON matrix for schrodinger mode")
    e.add_argument("--generator", help="JSON matrix for exp mode")
    e.add_argument("--out", help="CSV destination (stdout when omitted)")
    e.set_defaults(func=cmd_evolve)

    s = sub.add_parser("star", help="noncommutative product of two operators")
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("--state", help="also evaluate the product at this point")
    s.add_argument("--out", help="write the product operator here")
    s.set_defaults(func=cmd_star)

    n = sub.add_parser("norm", help="sampled norm estimate for an operator")
    n.add_argument("operator")
    n.add_argument("--which", choices=["b", "s", "d"], default="b")
    n.add_argument("--samples", default="2048")
    n.add_argument("--seed", default="0")
    n.set_defaults(func=cmd_norm)

    v = sub.add_parser("verify", help="run the property-verification suites")
    v.add_argument(
        "suite", nargs="?", default="all", choices=["geometry", "algebra", "dynamics", "all"]
    )
    v.add_argument("--dim", default="4")
    v.add_argument("--trials", default="200")
    v.add_argument("--seed", default="0")
    v.add_argument("--tol", default="1", help="multiplier on every property tolerance")
    v.add_argument("--out", help="also write the report here")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
