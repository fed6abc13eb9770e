"""Command-line front end.

Every subcommand writes deterministic text to stdout.  Exit codes: 0 on
success, 1 on a domain error (message on stderr), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import annulus, bratteli, cluster, jones, k0
from .errors import ClusterKitError
from .laurent import LaurentPolynomial

__all__ = ["main", "DISPATCH"]


def _load_seed(path):
    with open(path, "r", encoding="utf-8") as fh:
        return cluster.seed_from_json(fh.read())


def _parse_matrix(text):
    data = json.loads(text)
    if not isinstance(data, list):
        raise ClusterKitError("matrix must be a JSON list of rows")
    return data


def cmd_mutate(args, out):
    seed = _load_seed(args.seed)
    for k in (int(tok) for tok in args.directions.replace(",", " ").split()):
        seed = cluster.seed_mutate(seed, k)
    out.write(json.dumps(cluster.seed_to_json(seed), separators=(", ", ": ")))
    out.write("\n")


def cmd_vars(args, out):
    seed = _load_seed(args.seed)
    variables = cluster.enumerate_cluster_variables(
        seed, args.depth, budget=args.budget
    )
    positive, witness = cluster.check_positivity(variables)
    out.write(f"count {len(variables)}\n")
    out.write(f"positive {'yes' if positive else 'no'}\n")
    if witness is not None:
        out.write(f"witness {witness.render()}\n")
    for text in sorted(p.render() for p in variables):
        out.write(text + "\n")


def cmd_bratteli(args, out):
    seed = _load_seed(args.seed)
    tree = bratteli.build_mutation_tree(seed, args.depth, budget=args.budget)
    diagram = bratteli.quotient_to_bratteli(tree, mode=args.mode)
    out.write(bratteli.export_diagram(diagram, args.format))
    if args.format == "json":
        out.write("\n")


def cmd_k0(args, out):
    matrix = _parse_matrix(args.matrix)
    diagram = bratteli.stationary_diagram(matrix)
    if args.trace:
        state = k0.trace_state(diagram, tolerance=args.tolerance)
        out.write(f"eigenvalue {state.eigenvalue:.12f}\n")
        weights = " ".join(f"{w:.12f}" for w in state.weights)
        out.write(f"weights {weights}\n")
    if args.vector is not None:
        coords = tuple(int(tok) for tok in args.vector.replace(",", " ").split())
        element = k0.K0Element(args.level, coords)
        element = k0.k0_push(element, diagram, args.level + args.steps)
        out.write(f"level {element.level}\n")
        out.write("vector " + " ".join(str(c) for c in element.vector) + "\n")


def cmd_gicar(args, out):
    if args.rho is not None:
        kk, nn = (int(tok) for tok in args.rho.replace(",", " ").split())
        out.write(k0.gicar_rho(kk, nn).render() + "\n")
    if args.check is not None:
        poly = LaurentPolynomial.parse(args.check, nvars=1)
        decision = k0.gicar_is_positive(poly, max_degree=args.horizon)
        out.write(f"status {decision.status.name}\n")
        out.write(f"certificate {decision.certificate}\n")


def cmd_moduli(args, out):
    if args.t is not None:
        sol = annulus.solve_moduli(float(Fraction(args.t)))
        out.write(f"t {sol.t:.12f}\n")
        out.write(f"x1 {sol.x1:.12f}\n")
        out.write(f"x2 {sol.x2:.12f}\n")
        out.write(f"residual1 {sol.residual1:.3e}\n")
        out.write(f"residual2 {sol.residual2:.3e}\n")
    if args.n_max is not None:
        adm = annulus.admissible_moduli(args.n_max)
        out.write("continuous [4, inf)\n")
        for n, t_n, lam in adm.discrete:
            out.write(f"n {n} t {t_n:.12f} lambda {lam:.12f}\n")


def cmd_jones(args, out):
    word = jones.BraidWord.parse(args.strands, args.braid)
    value = jones.jones_polynomial(word)
    if args.oracle:
        oracle = jones.jones_from_oracle(word)
        if value != oracle:
            raise ClusterKitError(
                f"pipeline value {value.render()} disagrees with "
                f"oracle {oracle.render()}"
            )
    out.write(value.render() + "\n")


def cmd_tlcheck(args, out):
    tau = Fraction(args.tau) if args.tau is not None else None
    report = jones.verify_paper_relations(
        args.n, Fraction(args.t), tau=tau, num_words=args.words, seed=args.rng_seed
    )
    out.write(f"n {report['n']} t {report['t']} tau {report['tau']}\n")
    out.write("checks " + " ".join(report["checks"]) + "\n")


def cmd_report(args, out):
    from . import report

    paths = report.write_report(
        seed_path=args.seed,
        depth=args.depth,
        mode=args.mode,
        t_max=args.t_max,
        out_dir=args.out,
    )
    for path in paths:
        out.write(path + "\n")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="clusterkit",
        description="Exact cluster mutation, Bratteli quotients, dimension "
        "groups, annulus moduli, and Jones polynomials.",
    )
    parser.add_argument(
        "--threads", type=int, default=1, help="worker threads (default 1)"
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("mutate", help="mutate a seed along a direction word")
    p.add_argument("--seed", required=True, help="seed JSON file")
    p.add_argument(
        "--directions", required=True, help='1-based directions, e.g. "1 2 1"'
    )

    p = sub.add_parser("vars", help="enumerate cluster variables to a depth")
    p.add_argument("--seed", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--budget", type=int, default=100_000)

    p = sub.add_parser("bratteli", help="quotient a mutation tree to a diagram")
    p.add_argument("--seed", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--budget", type=int, default=200_000)
    p.add_argument(
        "--mode", choices=("literal", "permuted"), default=bratteli.DEFAULT_MODE
    )
    p.add_argument("--format", choices=("json", "dot"), default="json")

    p = sub.add_parser("k0", help="push coordinates / trace of a stationary diagram")
    p.add_argument("--matrix", required=True, help="incidence matrix as JSON rows")
    p.add_argument("--vector", help="integer coordinates to push")
    p.add_argument("--level", type=int, default=0)
    p.add_argument("--steps", type=int, default=1)
    p.add_argument("--trace", action="store_true", help="print the trace state")
    p.add_argument("--tolerance", type=float, default=1e-12)

    p = sub.add_parser("gicar", help="interval-polynomial generators and positivity")
    p.add_argument("--rho", help='indices "k n" of the generator to print')
    p.add_argument("--check", help="polynomial in x to test for positivity on (0,1)")
    p.add_argument("--horizon", type=int, default=k0.DEFAULT_HORIZON)

    p = sub.add_parser("moduli", help="annulus modulus equations")
    p.add_argument("--t", help="modulus parameter (rational or decimal)")
    p.add_argument("--n-max", type=int, help="list discrete admissible moduli")

    p = sub.add_parser("jones", help="Jones polynomial of a closed braid")
    p.add_argument("--strands", type=int, required=True)
    p.add_argument("--braid", required=True, help='letters, e.g. "1 -2 1 -2"')
    p.add_argument(
        "--oracle", action="store_true", help="cross-check against the state sum"
    )

    p = sub.add_parser("tlcheck", help="verify the projection-algebra relations")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", required=True, help="positive rational")
    p.add_argument("--tau", help="override the trace constant (for failure demos)")
    p.add_argument("--words", type=int, default=50)
    p.add_argument("--rng-seed", type=int, default=0)

    p = sub.add_parser("report", help="render figures and CSV summaries")
    p.add_argument("--seed", required=True)
    p.add_argument("--depth", type=int, default=5)
    p.add_argument(
        "--mode", choices=("literal", "permuted"), default=bratteli.DEFAULT_MODE
    )
    p.add_argument("--t-max", type=float, default=20.0)
    p.add_argument("--out", required=True, help="output directory")

    return parser


DISPATCH = {
    "mutate": cmd_mutate,
    "vars": cmd_vars,
    "bratteli": cmd_bratteli,
    "k0": cmd_k0,
    "gicar": cmd_gicar,
    "moduli": cmd_moduli,
    "jones": cmd_jones,
    "tlcheck": cmd_tlcheck,
    "report": cmd_report,
}


def main(argv=None, out=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    out = out if out is not None else sys.stdout
    try:
        DISPATCH[args.subcommand](args, out)
    except (ClusterKitError, OSError, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
