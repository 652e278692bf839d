"""``regsub`` command-line interface.

Exit status: 0 on success, 2 on usage errors (bad flags, invalid config), 1 on
runtime errors (domain violations, budgets, malformed graph6).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import __version__
from .asymptotics import (RatioSpec, bound_pki, estimate_count, estimate_pk, log_ratio_estimate,
                          prob_induced)
from .enumeration import (DegreeCounter, brute_force_count, count_by_degree_sequence,
                          count_constrained, exact_pk, exact_pki, regular_degree)
from .errors import BudgetExceeded, DomainError, Graph6Error
from .experiments import (ConfigError, ExperimentConfig, run_moments, run_sweep, sweep_csv,
                          write_text)
from .graph import degree_sequence, sample_gnp
from .graph6 import parse_graph6, write_graph6
from .moments import log_expected_count, upper_bound_tail, variance_bound_profile
from .sampling import sample_regular_exact
from .search import (DEFAULT_ITERATIONS, DEFAULT_NODE_BUDGET, max_induced_regular_exact,
                     max_induced_regular_heuristic)


class UsageError(Exception):
    pass


def int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True, default=str))
    else:
        print("\n".join(lines))


def cmd_count_degseq(args):
    d = args.degrees
    value = count_by_degree_sequence(d)
    payload = {"degrees": d, "count": str(value)}
    lines = [str(value)]
    if args.brute:
        k = len(d)
        brute = brute_force_count(k, lambda g: degree_sequence(g) == tuple(d))
        payload["brute_force"] = str(brute)
        lines.append(f"brute force: {brute}")
    _emit(args, payload, lines)


def cmd_count_constrained(args):
    value = count_constrained(args.k, args.core)
    _emit(args, {"k": args.k, "core": args.core, "count": str(value)}, [str(value)])


def cmd_pk(args):
    if args.exact:
        p = exact_pk(args.k)
        _emit(args, {"k": args.k, **p.to_json()}, [str(p), repr(p.float_view)])
    else:
        est = estimate_pk(args.k)
        _emit(args, {"k": args.k, **est.to_json()},
              [f"log estimate {est.log_value!r}", f"estimate {est.value!r}"])


def cmd_pki(args):
    counter = DegreeCounter()
    p, arg = exact_pki(args.k, args.i, counter)
    pk = exact_pk(args.k, counter)
    bounds = bound_pki(args.k, args.i, counter)
    ratio = float(p.value / pk.value) if pk.numerator else math.inf
    payload = {"k": args.k, "i": args.i, "pki": p.to_json(), "argmax": list(arg),
               "pk": pk.to_json(), "ratio": ratio, "log_bound_a": bounds.log_a,
               "log_bound_b": bounds.log_b, "pk_source": bounds.pk_source}
    _emit(args, payload, [str(p), repr(p.float_view), f"argmax {' '.join(map(str, arg))}",
                          f"ratio to p_k {ratio!r}", f"log bound A {bounds.log_a!r}",
                          f"log bound B {bounds.log_b!r}"])


def cmd_estimate(args):
    est = estimate_count(args.degrees)
    payload = est.to_json()
    lines = [f"estimate {est.value!r}", f"log {est.log_value!r}", f"lambda {est.lam!r}",
             f"regime {est.regime}"]
    if args.exact:
        exact = count_by_degree_sequence(args.degrees)
        payload["exact"] = str(exact)
        lines.append(f"exact {exact}")
    _emit(args, payload, lines)


def cmd_ratio(args):
    if args.i is not None and args.i != len(args.d):
        raise UsageError(f"--i {args.i} does not match len(--d) = {len(args.d)}")
    spec = RatioSpec(args.k, tuple(args.d), tuple(args.s))
    value = math.exp(log_ratio_estimate(spec))
    payload = {"k": spec.k, "d": list(spec.d), "s": list(spec.s), "estimate": value}
    lines = [repr(value)]
    if args.exact:
        counter = DegreeCounter()
        num = count_constrained(spec.k, spec.d, counter)
        den = count_constrained(spec.k, spec.shifted, counter)
        exact = num / den if den else math.inf
        payload.update(exact_numerator=str(num), exact_denominator=str(den), exact=exact)
        lines.append(f"exact {num}/{den} = {exact!r}")
    _emit(args, payload, lines)


def cmd_prob_induced(args):
    est = prob_induced(args.k, args.degrees)
    payload = est.to_json()
    lines = [f"estimate {est.value!r}", f"log {est.log_value!r}",
             f"sum |delta| {est.drivers['sum_abs_delta']!r}"]
    if args.exact:
        counter = DegreeCounter()
        num = count_constrained(args.k, args.degrees, counter)
        den = counter.count([regular_degree(args.k)] * args.k)
        payload["exact"] = num / den if den else None
        lines.append(f"exact {num}/{den} = {num / den if den else math.nan!r}")
    _emit(args, payload, lines)


def cmd_moments(args):
    if args.expected_only:
        value = log_expected_count(args.n, args.k, args.mode if args.mode == "exact" else "asymptotic")
        _emit(args, {"n": args.n, "k": args.k, "log_ex": value}, [f"log E[X] {value!r}"])
        return
    report = variance_bound_profile(args.n, args.k, args.mode)
    if args.csv:
        write_text(args.csv, report.to_csv())
    lines = [f"n {report.n}  k {report.k}  mode {report.mode}", f"log E[X] {report.log_ex!r}",
             f"t {report.t}", f"variance ratio bound {report.variance_ratio_bound!r}",
             f"band binomial mass {math.exp(report.log_band_mass)!r}", report.to_csv().rstrip()]
    _emit(args, report.to_json(), lines)


def cmd_tail(args):
    k0 = args.k0 if args.k0 is not None else math.ceil(2 * args.n ** (2 / 3))
    value = upper_bound_tail(args.n, k0)
    _emit(args, {"n": args.n, "k0": k0, "log_tail": value}, [f"k0 {k0}", f"log tail {value!r}"])


def cmd_search(args):
    if args.graph6 is not None:
        g = parse_graph6(args.graph6)
    else:
        with open(args.graph6_file, encoding="ascii") as fh:
            g = parse_graph6(fh.readline())
    if args.heuristic:
        res = max_induced_regular_heuristic(g, args.seed, args.budget or DEFAULT_ITERATIONS)
    else:
        res = max_induced_regular_exact(g, args.budget or DEFAULT_NODE_BUDGET)
    _emit(args, res.to_json(), [f"size {res.size}", f"r {res.r}",
                                f"subset {' '.join(map(str, res.subset))}",
                                f"optimal {str(res.optimal).lower()}"])


def cmd_sample(args):
    if args.regular is not None:
        graphs = sample_regular_exact(args.regular, args.seed, args.count)
    else:
        if args.n is None:
            raise UsageError("sample needs --n (or --regular K)")
        from .rng import derive_seed
        graphs = [sample_gnp(args.n, args.p, args.seed if args.count == 1 else derive_seed(args.seed, t))
                  for t in range(args.count)]
    codes = [write_graph6(g) for g in graphs]
    _emit(args, {"graph6": codes}, codes)


def cmd_sweep(args):
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            config = ExperimentConfig.from_json(fh.read())
    else:
        config = ExperimentConfig(
            command="moments" if args.k else "sweep",
            n_range=args.n or [20], k_range=args.k or [], trials=args.trials, seed=args.seed,
            ex_mode=args.ex_mode, search_mode=args.search, exact_cap=args.exact_cap,
            node_budget=args.node_budget, iteration_budget=args.iteration_budget,
            output=args.output)
    config.validate()
    if args.save_config:
        write_text(args.save_config, config.to_json() + "\n")
    if config.command == "sweep":
        text = sweep_csv(run_sweep(config))
    else:
        text = run_moments(config)
    if config.output:
        write_text(config.output, text)
    elif args.json:
        import csv, io
        print(json.dumps(list(csv.DictReader(io.StringIO(text)))))
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit JSON instead of text")
    p = argparse.ArgumentParser(prog="regsub", description="Induced regular subgraphs of G(n, 1/2).")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=func)
        return sp

    sp = add("count-degseq", cmd_count_degseq, "exact number of labeled graphs with a degree sequence")
    sp.add_argument("--degrees", type=int_list, required=True)
    sp.add_argument("--brute", action="store_true", help="cross-check by exhaustive scan")

    sp = add("count-constrained", cmd_count_constrained, "graphs with an edgeless core of given deficits")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--core", type=int_list, required=True)

    sp = add("pk", cmd_pk, "probability that G(k,1/2) is floor((k-1)/2)-regular")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--exact", action="store_true")

    sp = add("pki", cmd_pki, "max conditional regularity probability given the first i vertices")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--i", type=int, required=True)

    sp = add("estimate", cmd_estimate, "asymptotic count for a degree sequence")
    sp.add_argument("--degrees", type=int_list, required=True)
    sp.add_argument("--exact", action="store_true")

    sp = add("ratio", cmd_ratio, "estimate of N(d)/N(d-s)")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--i", type=int)
    sp.add_argument("--d", type=int_list, required=True)
    sp.add_argument("--s", type=int_list, required=True)
    sp.add_argument("--exact", action="store_true")

    sp = add("prob-induced", cmd_prob_induced, "probability a random regular graph induces H on its prefix")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--degrees", type=int_list, required=True, help="degree sequence of H")
    sp.add_argument("--exact", action="store_true")

    sp = add("moments", cmd_moments, "expected count and variance-ratio profile")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--mode", choices=["exact", "lemma-bound"], default="lemma-bound")
    sp.add_argument("--expected-only", action="store_true")
    sp.add_argument("--csv", metavar="PATH")

    sp = add("tail", cmd_tail, "log of the union-bound tail sum over k >= k0")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k0", type=int)

    sp = add("search", cmd_search, "largest induced regular subgraph of a graph6 graph")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph6")
    src.add_argument("--graph6-file")
    sp.add_argument("--heuristic", action="store_true")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=int)

    sp = add("sample", cmd_sample, "sample G(n,p) or uniform regular graphs, as graph6")
    sp.add_argument("--n", type=int)
    sp.add_argument("--p", type=float, default=0.5)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--regular", type=int, metavar="K",
                    help="uniform floor((K-1)/2)-regular graphs on K vertices instead")

    sp = add("sweep", cmd_sweep, "seeded sweep of maximum induced regular subgraph sizes (CSV)")
    sp.add_argument("--config", metavar="JSON")
    sp.add_argument("--save-config", metavar="PATH")
    sp.add_argument("--n", type=int_list)
    sp.add_argument("--k", type=int_list, help="k values: run the moments sweep instead")
    sp.add_argument("--trials", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--ex-mode", choices=["asymptotic", "exact"], default="asymptotic")
    sp.add_argument("--search", choices=["auto", "exact", "heuristic"], default="auto")
    sp.add_argument("--exact-cap", type=int, default=26)
    sp.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    sp.add_argument("--iteration-budget", type=int, default=DEFAULT_ITERATIONS)
    sp.add_argument("--output", metavar="PATH")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except (UsageError, ConfigError) as exc:
        print(f"regsub {args.command}: usage error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, BudgetExceeded, Graph6Error, OSError) as exc:
        print(f"regsub {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
