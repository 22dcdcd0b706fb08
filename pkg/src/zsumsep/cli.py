"""Command-line front end.

Every command prints one document (``json``, ``csv`` or ``text``) on stdout.
Exit codes: 0 success, 1 bad input or usage, 2 a verification failed,
3 a budget ran out.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .config import FORMATS, Budgets, Config
from .errors import BudgetExceeded, ZsumError
from .geodesic import absolute_positive_diameter, walk_table
from .group import AbelianGroup, dstar, parse_group, render_group
from .seqmonoid import SeqVec, Support, davenport_brute, enumerate_atoms, is_atom, is_zero_sum
from .septest import SCHEMA, beta_sep_brute, is_separating_atom, zero_sum_lattice
from .theorems import formula_report, load_catalog, verification_document, verify_catalog

EXIT_OK, EXIT_USAGE, EXIT_FAILED, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags, which is our verification-failure code
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_elements(G: AbelianGroup, text: str) -> list[tuple[int, ...]]:
    """``"1,0;0,1;1,1"`` -> residue tuples, each with one entry per factor."""
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk and G.rank == 0:
            out.append(())
            continue
        try:
            res = tuple(int(x) for x in chunk.split(","))
        except ValueError:
            raise UsageError(f"malformed element {chunk!r}") from None
        if len(res) != G.rank:
            raise UsageError(f"element {chunk!r} needs {G.rank} coordinates for {render_group(G)}")
        out.append(tuple(x % n for x, n in zip(res, G.factors)))
    return out


def parse_mult(text: str, size: int) -> list[int]:
    try:
        mult = [int(x) for x in text.replace(";", ",").split(",")]
    except ValueError:
        raise UsageError(f"malformed multiplicities {text!r}") from None
    if len(mult) != size:
        raise UsageError(f"{len(mult)} multiplicities for {size} support elements")
    if any(m < 0 for m in mult):
        raise UsageError("multiplicities must be nonnegative")
    return mult


def _support(G: AbelianGroup, text: str, include_zero: bool) -> Support:
    elems = parse_elements(G, text)
    if len(set(elems)) != len(elems):
        raise UsageError("support elements must be distinct")
    return Support.of(G, elems, include_zero=include_zero)


def _doc(command: str, G: AbelianGroup, **fields) -> dict:
    return {"schema": SCHEMA, "command": command, "group": render_group(G), **fields}


def cmd_group_info(G: AbelianGroup, cfg: Config, args) -> tuple[dict, int]:
    info = formula_report(G).to_json()
    info.update(order=G.order, exponent=G.exponent)
    return _doc("group-info", G, **info), EXIT_OK


def cmd_betasep(G: AbelianGroup, cfg: Config, args) -> tuple[dict, int]:
    fr = formula_report(G)
    if not args.brute:
        return _doc("betasep", G, method="formula", beta_sep=fr.beta_formula), EXIT_OK
    rep = beta_sep_brute(G, cfg.budgets, jobs=cfg.jobs, include_zero=cfg.include_zero)
    body = rep.to_json(timing=args.timing)
    body.pop("schema")
    body.pop("group")
    return _doc("betasep", G, method="brute", beta_sep=rep.beta_brute, beta_formula=fr.beta_formula, **body), EXIT_OK


def cmd_davenport(G: AbelianGroup, cfg: Config, args) -> tuple[dict, int]:
    res = davenport_brute(G, cfg.budgets.max_atom_len)
    return _doc(
        "davenport", G,
        davenport=res.value,
        dstar=dstar(G),
        witness=None if res.witness is None else res.witness.to_json(),
    ), EXIT_OK


def cmd_diameter(G: AbelianGroup, cfg: Config, args) -> tuple[dict, int]:
    if args.exhaustive:
        d = absolute_positive_diameter(G, args.max_order)
        return _doc("diameter", G, mode="exhaustive", diameter=d, dstar_minus_1=dstar(G) - 1), EXIT_OK
    steps = [G.elem(r) for r in parse_elements(G, args.steps)]
    wt = walk_table(G, steps)
    if not wt.generates():
        raise UsageError(f"steps {args.steps!r} do not generate {render_group(G)}")
    return _doc("diameter", G, mode="steps", steps=[list(s.residues) for s in steps], diameter=wt.diameter()), EXIT_OK


def cmd_atoms(G: AbelianGroup, cfg: Config, args) -> tuple[dict, int]:
    sup = _support(G, args.support, cfg.include_zero)
    max_len = args.max_len or cfg.budgets.max_atom_len
    atoms = enumerate_atoms(sup, max_len)
    return _doc(
        "atoms", G,
        support=sup.to_json(),
        max_len=max_len,
        count=len(atoms),
        atoms=[{"mult": list(A.mult), "length": len(A)} for A in atoms],
    ), EXIT_OK


def cmd_septest(G: AbelianGroup, cfg: Config, args) -> tuple[dict, int]:
    elems = parse_elements(G, args.support)
    mult = parse_mult(args.mult, len(elems))
    if len(set(elems)) != len(elems):
        raise UsageError("support elements must be distinct")
    if not cfg.include_zero and any(not any(r) for r in elems):
        raise UsageError("0 is excluded from supports unless --include-zero is given")
    A = SeqVec.from_json(G, {"support": [list(e) for e in elems], "mult": mult})
    atom = is_atom(A)
    sep = atom and is_separating_atom(A)
    shorter = zero_sum_lattice(A.support, max(len(A) - 1, 0))
    return _doc(
        "septest", G,
        sequence=A.to_json(),
        length=len(A),
        zero_sum=is_zero_sum(A),
        atom=atom,
        separating=sep,
        shorter_lattice=shorter.to_json(),
    ), EXIT_OK


def cmd_verify(cfg: Config, args) -> tuple[dict, int]:
    groups = load_catalog(args.catalog or cfg.catalog)
    rows, ok = verify_catalog(args.kind, groups, cfg.budgets, jobs=cfg.jobs, include_zero=cfg.include_zero)
    return verification_document(args.kind, rows, ok), EXIT_OK if ok else EXIT_FAILED


def _cell(v):
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    if v is None:
        return ""
    return v


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    rows = doc.get("rows")
    if rows is None:
        rows = [{k: v for k, v in doc.items()}]
    keys = sorted({k for r in rows for k in r})
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _cell(r.get(k)) for k in keys})
        return buf.getvalue()
    if "rows" not in doc:
        width = max(map(len, keys))
        return "".join(f"{k.ljust(width)}  {_cell(doc[k])}\n" for k in keys)
    table = [keys] + [[str(_cell(r.get(k))) for k in keys] for r in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(keys))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in table]
    head = f"verify {doc['verify']}: {'ok' if doc['ok'] else 'FAILED'}\n"
    return head + "\n".join(lines) + "\n"


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    sup = argparse.SUPPRESS
    p.add_argument("--jobs", type=int, default=sup, help="worker processes for brute-force searches")
    p.add_argument("--format", choices=FORMATS, default=sup, help="output format (default json)")
    p.add_argument("--include-zero", action="store_true", default=sup, help="allow 0 in supports")
    p.add_argument("--config", default=sup, help="JSON config file with budgets and defaults")
    p.add_argument("--max-atom-len", type=int, default=sup, help="override the atom length budget")
    p.add_argument("--wall-clock-ms", type=int, default=sup, help="override the wall-clock budget")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="zsumsep", description="Separating Noether numbers of finite abelian groups.",
                     parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("group", parents=[common], help="group invariants")
    p.add_argument("action", choices=["info"])
    p.add_argument("spec")

    p = sub.add_parser("betasep", parents=[common], help="separating Noether number")
    p.add_argument("spec")
    m = p.add_mutually_exclusive_group()
    m.add_argument("--brute", action="store_true", help="exhaustive separating-atom search")
    m.add_argument("--formula", action="store_true", help="closed form (default)")
    p.add_argument("--timing", action="store_true", help="include elapsed_ms (breaks byte-identical output)")

    p = sub.add_parser("davenport", parents=[common], help="Davenport constant by exhaustive search")
    p.add_argument("spec")

    p = sub.add_parser("diameter", parents=[common], help="positive diameter")
    p.add_argument("spec")
    m = p.add_mutually_exclusive_group(required=True)
    m.add_argument("--steps", help='step set, e.g. "1,0;0,1"')
    m.add_argument("--exhaustive", action="store_true", help="maximize over all generating subsets")
    p.add_argument("--max-order", type=int, default=20, help="refuse exhaustive search above this order")

    p = sub.add_parser("atoms", parents=[common], help="minimal zero-sum sequences over a support")
    p.add_argument("spec")
    p.add_argument("--support", required=True, help='elements, e.g. "1,0;0,1;1,1"')
    p.add_argument("--max-len", type=int, default=None)

    p = sub.add_parser("septest", parents=[common], help="test whether a sequence is a separating atom")
    p.add_argument("spec")
    p.add_argument("--support", required=True)
    p.add_argument("--mult", required=True, help="multiplicities in support order, e.g. 1,1,1")

    p = sub.add_parser("verify", parents=[common], help="run a verification over a group catalog")
    p.add_argument("kind", choices=["theorem", "corollary", "lemmas"])
    p.add_argument("--catalog", default=None, help='"default" or a file with one group per line')
    return parser


def resolve_config(args) -> Config:
    cfg = Config.load(args.config) if getattr(args, "config", None) else Config()
    over = {}
    for key in ("jobs", "format", "include_zero"):
        if hasattr(args, key):
            over[key] = getattr(args, key)
    budgets = {}
    for key in ("max_atom_len", "wall_clock_ms"):
        if hasattr(args, key):
            budgets[key] = getattr(args, key)
    if budgets:
        over["budgets"] = Budgets(**{**cfg.budgets.__dict__, **budgets})
    return cfg.with_(**over) if over else cfg


COMMANDS = {
    "betasep": cmd_betasep,
    "davenport": cmd_davenport,
    "diameter": cmd_diameter,
    "atoms": cmd_atoms,
    "septest": cmd_septest,
}


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        if args.command == "verify":
            doc, code = cmd_verify(cfg, args)
        else:
            G = parse_group(args.spec)
            handler = cmd_group_info if args.command == "group" else COMMANDS[args.command]
            doc, code = handler(G, cfg, args)
    except BudgetExceeded as e:
        print(f"zsumsep: budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, ZsumError, ValueError, OSError) as e:
        print(f"zsumsep: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    out.write(render(doc, cfg.format))
    return code


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
