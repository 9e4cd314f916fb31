"""Command-line entry point: ``f2reducts <command> ...``.

Exit codes: 0 success, 1 usage error, 2 budget exhausted, 3 invariant violation.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .autsearch import DEFAULT_NODE_LIMIT, Structure, automorphisms, parse_structure
from .classify import FINGERPRINT_COLUMNS, classify
from .errors import BudgetExhausted, F2ReductsError, InvariantViolation
from .forms import parse_form, standard_form
from .fraisse import extension_witness, parse_graph, realize_graph
from .gf2 import Vec2, format_tuple, parse_point
from .orbits import DEFAULT_STATE_BUDGET, FILTERS, census_tsv, orbit_profile, tuple_orbits
from .perm import parse_genset
from .relations import builtin_relation, parse_relation, simH_classes, unit_subgroups, fp_line
from .stdgroups import GROUP_NAMES, named_group

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_INVARIANT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _form(args):
    if args.form is None:
        return None
    if args.form == "standard":
        if args.dim % 2:
            raise UsageError("the standard form needs an even dimension")
        return standard_form(args.dim // 2)
    F = parse_form(Path(args.form).read_text())
    if F.dim != args.dim:
        raise UsageError(f"form file has dim {F.dim}, expected {args.dim}")
    return F


def _group(args, F):
    sel = args.group
    if sel.startswith("file:"):
        G = parse_genset(Path(sel[5:]).read_text())
        if G.dim != args.dim:
            raise UsageError(f"generator file has dim {G.dim}, expected {args.dim}")
        return G
    if sel not in GROUP_NAMES:
        raise UsageError(f"unknown group {sel!r}; expected one of {', '.join(GROUP_NAMES)} or file:<path>")
    return named_group(sel, args.dim, F)


def _header(args, extra=()):
    skip = {"func", "workers", "out"}
    items = [f"{k}={v}" for k, v in sorted(vars(args).items()) if k not in skip and v is not None]
    return "# f2reducts " + " ".join(list(items) + list(extra))


def _emit(args, text):
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_orbits(args):
    F = _form(args)
    G = _group(args, F)
    if args.profile:
        prof = orbit_profile(G, args.profile, args.filter, args.budget, args.workers)
        lines = [_header(args), "k\torbits"] + [f"{k}\t{c}" for k, c in enumerate(prof, 1)]
        return "\n".join(lines) + "\n"
    C = tuple_orbits(G, args.arity, args.filter, args.budget, args.workers, form=F)
    return census_tsv(C, _header(args)[2:])


def cmd_aut(args):
    if args.structure:
        path = Path(args.structure)
        S = parse_structure(path.read_text(), base_dir=path.parent)
    else:
        F = _form(args)
        rels = []
        for name in (args.relations or "").split(","):
            name = name.strip()
            if not name:
                continue
            if name.startswith("file:"):
                p = Path(name[5:])
                rels.append(parse_relation(p.read_text(), args.dim, name=p.stem))
            else:
                rels.append(builtin_relation(name, args.dim, F))
        if not rels and not args.fix_zero:
            raise UsageError("aut needs --relations or --structure")
        S = Structure(args.dim, tuple(rels), args.fix_zero)
    res = automorphisms(S, node_limit=args.node_limit, workers=args.workers)
    lines = [_header(args), f"order\t{res.order}",
             "orbit_sizes\t" + ",".join(str(s) for s in res.orbit_sizes)]
    for g in res.group.gens:
        lines.append("gen\t" + format_tuple(int(x) for x in g.images))
    return "\n".join(lines) + "\n"


def cmd_classify(args):
    F = _form(args)
    G = _group(args, F)
    c = classify(G, F, workers=args.workers)
    lines = [_header(args), "\t".join(("label",) + FINGERPRINT_COLUMNS),
             "\t".join([c.label] + c.fingerprint.row())]
    return "\n".join(lines) + "\n"


def _points(text, dim):
    return [parse_point(tok, dim) for tok in text.split(",") if tok.strip()]


def cmd_witness(args):
    F = _form(args) or _default_form(args)
    a = [Vec2(args.dim, x) for x in _points(args.tuple, args.dim)]
    targets = [int(x) for x in args.targets.split(",") if x.strip()]
    w = extension_witness(F, a, targets)
    return _header(args) + "\n" + ("none" if w is None else str(w)) + "\n"


def _default_form(args):
    if args.dim % 2:
        raise UsageError("a nondegenerate form needs an even dimension")
    return standard_form(args.dim // 2)


def cmd_realize(args):
    F = _form(args) or _default_form(args)
    if args.graph:
        adj = parse_graph(Path(args.graph).read_text())
    elif args.adj:
        adj = parse_graph("\n".join([str(len(args.adj.split(",")))] + args.adj.split(",")))
    else:
        raise UsageError("realize needs --graph or --adj")
    b = realize_graph(adj, F)
    return _header(args) + "\n" + ("none" if b is None else format_tuple(v.bits for v in b)) + "\n"


def cmd_reducts_fq(args):
    lines = [_header(args), "H\torder\tclasses\tclass_size\tin_lines"]
    for H in unit_subgroups(args.p):
        classes = simH_classes(args.p, H, args.dim)
        in_lines = all(set(c) <= fp_line(args.p, c[0]) for c in classes)
        sizes = sorted({len(c) for c in classes})
        lines.append("\t".join([",".join(str(h) for h in sorted(H)), str(len(H)), str(len(classes)),
                                ",".join(str(s) for s in sizes), str(in_lines).lower()]))
    return "\n".join(lines) + "\n"


def build_parser():
    p = _Parser(prog="f2reducts", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, group=False, form=True):
        sp.add_argument("--dim", type=int, required=True)
        if form:
            sp.add_argument("--form", help="'standard' or a form file")
        if group:
            sp.add_argument("--group", required=True, help=f"{', '.join(GROUP_NAMES)} or file:<path>")
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--out", help="write the report here instead of stdout")

    sp = sub.add_parser("orbits", help="orbit census on k-tuples")
    common(sp, group=True)
    sp.add_argument("--arity", type=int, default=1)
    sp.add_argument("--filter", choices=FILTERS, default="all")
    sp.add_argument("--profile", type=int, help="report orbit counts for k = 1..PROFILE instead")
    sp.add_argument("--budget", type=int, default=DEFAULT_STATE_BUDGET)
    sp.set_defaults(func=cmd_orbits)

    sp = sub.add_parser("aut", help="automorphism group of a relational structure")
    common(sp)
    sp.add_argument("--relations", help="comma list of relation names or file:<path>")
    sp.add_argument("--fix-zero", action="store_true")
    sp.add_argument("--structure", help="structure description file")
    sp.add_argument("--node-limit", type=int, default=DEFAULT_NODE_LIMIT)
    sp.set_defaults(func=cmd_aut)

    sp = sub.add_parser("classify", help="match a group against the named groups")
    common(sp, group=True)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("witness", help="extension witness w with a_j . w = i_j")
    common(sp)
    sp.add_argument("--tuple", required=True, help="comma list of points, e.g. e1,e2,0x5")
    sp.add_argument("--targets", required=True, help="comma list of bits")
    sp.set_defaults(func=cmd_witness)

    sp = sub.add_parser("realize", help="independent tuple with a prescribed Gram graph")
    common(sp)
    sp.add_argument("--graph", help="adjacency file (k, then k rows of bits)")
    sp.add_argument("--adj", help="inline rows, e.g. 011,101,110")
    sp.set_defaults(func=cmd_realize)

    sp = sub.add_parser("reducts-fq", help="sim_H censuses over F_p^n")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_reducts_fq)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "workers", 1) < 1:
        parser.error("--workers must be positive")
    for key in ("budget", "node_limit"):
        if getattr(args, key, 1) is not None and getattr(args, key, 1) < 1:
            parser.error(f"--{key.replace('_', '-')} must be positive")
    try:
        _emit(args, args.func(args))
    except BudgetExhausted as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_BUDGET
    except (InvariantViolation, AssertionError) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (UsageError, F2ReductsError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
