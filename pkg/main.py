import argparse
import logging
import sys
from typing import List, Optional

from engine.classify import bound, classify, format_classification, format_verdict
from engine.config import load_manifest, load_settings
from engine.generators import generate, parse_family_spec
from engine.graph import GraphError, read_graph, write_graph
from engine.harness import format_report, report_to_keyvalue, verify
from engine.linalg import adjacency, multiplicity, nullity, parse_rational, rank
from engine.memory import log_report
from engine.schemas import Universe
from engine.structure import summarize
from engine.transforms import format_trace, reduce

if sys.platform == 'win32':
    import codecs
    sys.stdout = codecs.getwriter('utf-8')(sys.stdout.buffer, 'strict')
    sys.stderr = codecs.getwriter('utf-8')(sys.stderr.buffer, 'strict')

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_VIOLATIONS = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        raise UsageError(message)


def _configure_logging(verbose: bool, log_file: Optional[str]) -> None:
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file, encoding='utf-8'))
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )


def cmd_nullity(args: argparse.Namespace) -> int:
    g = read_graph(args.file)
    print(f"n {g.n}\nrank {rank(adjacency(g))}\neta {nullity(g)}")
    return EXIT_OK


def cmd_multiplicity(args: argparse.Namespace) -> int:
    g = read_graph(args.file)
    lam = parse_rational(args.lam)
    print(f"lambda {lam}\nmultiplicity {multiplicity(g, lam)}")
    return EXIT_OK


def cmd_invariants(args: argparse.Namespace) -> int:
    s = summarize(read_graph(args.file))
    print(f"omega {s.omega}")
    print(f"c {s.c}")
    print(f"p {s.p}")
    print("degrees " + " ".join(str(d) for d in s.degrees))
    print(f"cycle_disjoint {str(s.cycle_disjoint).lower()}")
    for b in s.blocks:
        print(f"block {b.kind} " + " ".join(str(v) for v in b.vertices))
    return EXIT_OK


def cmd_bound(args: argparse.Namespace) -> int:
    sys.stdout.write(format_verdict(bound(read_graph(args.file))))
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    sys.stdout.write(format_classification(classify(read_graph(args.file))))
    return EXIT_OK


def cmd_reduce(args: argparse.Namespace) -> int:
    trace = reduce(read_graph(args.file))
    sys.stdout.write(format_trace(trace))
    if args.output:
        write_graph(trace.final, args.output)
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    g = generate(parse_family_spec(args.spec))
    write_graph(g, args.output or '-')
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    settings = load_settings(args.config)
    max_n = args.max_n if args.max_n is not None else settings.max_n
    if args.samples is not None:
        seed = args.seed if args.seed is not None else settings.seed
        universe = Universe(max_n=max_n, sign_mode='random', samples=args.samples, seed=seed)
    else:
        mode = 'all_signings' if args.all_signings else 'switching_classes'
        universe = Universe(max_n=max_n, sign_mode=mode, dedupe=args.dedupe)
    if args.props == 'manifest':
        names = load_manifest()
    elif args.props:
        names = [p.strip() for p in args.props.split(',') if p.strip()]
    else:
        names = None
    report = verify(universe, names, settings, jobs=args.jobs, full_dump=args.full_dump)
    sys.stdout.write(report_to_keyvalue(report) if args.keyvalue else format_report(report))
    if args.history:
        log_report(report, args.history)
    return EXIT_VIOLATIONS if report.total_violations else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog='signed-nullity', description='Nullity bounds and extremal signed graphs')
    parser.add_argument('-v', '--verbose', action='store_true', help='debug logging on stderr')
    parser.add_argument('--log-file', help='also write log records to this file')
    sub = parser.add_subparsers(dest='command', required=True)

    for name, handler, help_text in (
        ('nullity', cmd_nullity, 'print n, rank and eta'),
        ('invariants', cmd_invariants, 'print omega, c, p, degrees and blocks'),
        ('bound', cmd_bound, 'evaluate the nullity upper bound'),
        ('classify', cmd_classify, 'bound verdict plus extremal form and witness'),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument('file', help="graph file, '-' for stdin")
        p.set_defaults(handler=handler)

    p = sub.add_parser('multiplicity', help='multiplicity of a rational eigenvalue')
    p.add_argument('file')
    p.add_argument('lam', metavar='lambda', help='p/q or an integer')
    p.set_defaults(handler=cmd_multiplicity)

    p = sub.add_parser('reduce', help='apply nullity-preserving rewrites to a fixpoint')
    p.add_argument('file')
    p.add_argument('-o', '--output', help='write the reduced graph here')
    p.set_defaults(handler=cmd_reduce)

    p = sub.add_parser('gen', help='emit a graph from a family spec, e.g. theta p=4 q=4 l=4 signs=++')
    p.add_argument('spec', nargs='+')
    p.add_argument('-o', '--output')
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser('verify', help='run the property harness')
    p.add_argument('--max-n', type=int)
    p.add_argument('--samples', type=int, help='random mode: number of sampled graphs')
    p.add_argument('--seed', type=int)
    p.add_argument('--all-signings', action='store_true')
    p.add_argument('--dedupe', action='store_true', help='skip isomorphic underlying graphs')
    p.add_argument('--props', help="comma-separated property names, or 'manifest'")
    p.add_argument('--jobs', type=int)
    p.add_argument('--history', help='append the report to this JSON history file')
    p.add_argument('--full-dump', action='store_true', help='keep every counterexample')
    p.add_argument('--keyvalue', action='store_true', help='key=value output')
    p.add_argument('--config', help='settings YAML (default config/verify.yaml)')
    p.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    _configure_logging(args.verbose, args.log_file)
    try:
        return args.handler(args)
    except (GraphError, ValueError, OSError) as e:
        logger.debug("Command failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
