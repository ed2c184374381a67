"""Command-line front end.  Every subcommand prints one JSON document.

Exit status is 0 for any computed answer (infeasible or "at least four
values" included) and 2 for unreadable input or violated preconditions.
Row and column indices in the output are 1-based.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import generators, oracle, recognition, tu
from .matrix import ParseError, parse_instance, parse_matrix
from .optimize import StandardIP, solve_inequality, solve_standard


class CliError(ValueError):
    pass


@dataclass
class CliConfig:
    subcommand: str
    inputs: list
    output: str | None = None
    budget: int | None = None
    seed: int | None = None


def _read(path):
    p = Path(path)
    if not p.is_file():
        raise CliError(f"no such file: {path}")
    return p.read_text()


def _matrix(cfg):
    return parse_matrix(_read(cfg.inputs[0]))


def _parse_box(spec, dim):
    if ":" in spec and not Path(spec).is_file():
        lo, _, hi = spec.partition(":")
        try:
            return oracle.Box.uniform(dim, int(lo), int(hi))
        except ValueError as exc:
            raise CliError(f"bad box {spec!r}: {exc}") from None
    data = json.loads(_read(spec))
    data = data.get("box", data)
    return oracle.Box(tuple(data["lo"]), tuple(data["hi"]))


def _brute_json(res):
    if isinstance(res, oracle.BruteInfeasible):
        return {"status": "infeasible"}
    return {"status": "optimal", "x": list(res.point), "value": str(res.value)}


def cmd_recognize(cfg, args):
    return recognition.recognize(_matrix(cfg)).to_json()


def cmd_decompose(cfg, args):
    return recognition.decompose_ab0(_matrix(cfg), args.a, args.b).to_json()


def cmd_solve(cfg, args):
    kind, A, vec = parse_instance(_read(cfg.inputs[0]))
    if kind == "standard":
        return solve_standard(StandardIP(A, vec["b"], vec["c"])).to_json()
    return solve_inequality(A, vec["g"], vec["h"]).to_json()


def cmd_oracle_dset(cfg, args):
    return oracle.det_set_bruteforce(_matrix(cfg), cfg.budget).to_json("computed")


def cmd_oracle_ip(cfg, args):
    kind, A, vec = parse_instance(_read(cfg.inputs[0]))
    box = _parse_box(args.box, A.cols)
    if kind == "standard":
        res = oracle.standard_ip_bruteforce(A, vec["b"], vec["c"], box, cfg.budget)
    else:
        res = oracle.ip_bruteforce(A, vec["g"], vec["h"], box, cfg.budget)
    return _brute_json(res)


def cmd_generate(cfg, args):
    spec = generators.GenSpec(args.family, args.a, args.b, args.seed, args.size)
    gen = generators.generate(spec)
    out = gen.sidecar()
    if args.out:
        inst = Path(args.out + ".txt")
        side = Path(args.out + ".json")
        inst.write_text(gen.instance_text())
        side.write_text(gen.sidecar_text())
        out["files"] = [str(inst), str(side)]
    else:
        out["instance"] = gen.instance_text()
    return out


def cmd_tu(cfg, args):
    return tu.test_tu(_matrix(cfg)).to_json()


COMMANDS = {
    "recognize": cmd_recognize,
    "decompose": cmd_decompose,
    "solve": cmd_solve,
    "oracle-dset": cmd_oracle_dset,
    "oracle-ip": cmd_oracle_ip,
    "generate": cmd_generate,
    "tu": cmd_tu,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="abcmod", description=__doc__.splitlines()[0])
    parser.add_argument("--budget", type=int, help="oracle work limit (default: $ABCMOD_BUDGET or 10^6)")
    parser.add_argument("-o", "--output", help="write the JSON here instead of stdout")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    for name, help_ in [
        ("recognize", "compute D(A) or certify |D(A)| >= 4 / a duplicative pair"),
        ("oracle-dset", "D(A) by enumerating all maximal minors"),
        ("tu", "total unimodularity test with a violating submatrix"),
    ]:
        p = sub.add_parser(name, help=help_)
        p.add_argument("matrix")

    p = sub.add_parser("decompose", help="block decomposition of an {a,b,0}-modular matrix")
    p.add_argument("matrix")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)

    p = sub.add_parser("solve", help="solve a standard-form or inequality-form IP")
    p.add_argument("instance")

    p = sub.add_parser("oracle-ip", help="brute-force an IP over a box")
    p.add_argument("instance")
    p.add_argument("--box", required=True, help="LO:HI for a uniform box, or a JSON file with lo/hi")

    p = sub.add_parser("generate", help="emit a seeded instance and its sidecar")
    p.add_argument("--family", required=True, choices=generators.FAMILIES)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--size", type=int, default=2)
    p.add_argument("--out", help="path prefix; writes PREFIX.txt and PREFIX.json")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    inputs = [getattr(args, k) for k in ("matrix", "instance") if getattr(args, k, None)]
    cfg = CliConfig(args.subcommand, inputs, args.output, args.budget, getattr(args, "seed", None))
    try:
        result = COMMANDS[cfg.subcommand](cfg, args)
    except ParseError as exc:
        _fail({"error": "parse", "message": str(exc), "line": exc.line})
        return 2
    except (ValueError, oracle.BudgetExceeded, OSError) as exc:
        _fail({"error": type(exc).__name__, "message": str(exc)})
        return 2
    text = json.dumps(result, sort_keys=False) + "\n"
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _fail(payload):
    sys.stderr.write(json.dumps(payload) + "\n")


if __name__ == "__main__":
    sys.exit(main())
