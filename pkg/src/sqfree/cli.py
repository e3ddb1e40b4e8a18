"""Command-line driver for the whole pipeline.

Subcommands: build, iterate, certify, verify, bound, estimate, oracle.
Exit codes: 0 success, 2 verification/consistency failure, 3 resource
guard, 4 bad input.
"""

from __future__ import annotations

import argparse
import os
import resource
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from random import Random

from . import oracle
from .bounds import (
    approx_str,
    check_beta_four,
    estimate_lambda_size,
    fraction_str,
    growth_bound,
    search_beta,
)
from .errors import InputError, ResourceGuardError, VerificationError
from .graph import build_graph, write_graph_file
from .lambda_set import build_lambda, read_lambda_file, validate_lambda, write_lambda_file
from .weights import (
    first_violation,
    iterate,
    read_certificate_file,
    read_weights_file,
    renormalize,
    run_fixed_point,
    write_certificate_file,
    write_weights_file,
)
from .words import MAX_ALPHABET, word_to_str

EXIT_OK = 0
EXIT_VERIFY = 2
EXIT_RESOURCE = 3
EXIT_INPUT = 4

BETA_PRECISION = Fraction(1, 1000)


@dataclass
class RunConfig:
    p: int
    alphabet_size: int
    list_size: int
    iterations: int
    norm_target: int
    out_dir: str
    validate: bool
    threads: int
    max_mem_bytes: int
    allow_large: bool
    lambda_path: str
    certificate_path: str


def _parse_mem(text: str) -> int:
    units = {"K": 1 << 10, "M": 1 << 20, "G": 1 << 30}
    s = text.strip().upper()
    try:
        if s and s[-1] in units:
            return int(float(s[:-1]) * units[s[-1]])
        return int(s)
    except ValueError:
        raise InputError(f"cannot parse memory size {text!r}") from None


def _parse_threads(text: str) -> int:
    if text == "auto":
        return os.cpu_count() or 1
    try:
        n = int(text)
    except ValueError:
        raise InputError(f"--threads must be an integer or 'auto', got {text!r}") from None
    if n < 1:
        raise InputError("--threads must be >= 1")
    return n


def _config(args) -> RunConfig:
    p = args.period
    alphabet = args.alphabet
    list_size = args.list_size if args.list_size is not None else alphabet - 1
    if p < 1:
        raise InputError("--period must be >= 1")
    if not 2 <= alphabet <= MAX_ALPHABET:
        raise InputError(f"--alphabet must be in [2, {MAX_ALPHABET}]")
    if not 2 <= list_size <= alphabet:
        raise InputError("--list-size must satisfy 2 <= list_size <= alphabet")
    if args.iterations < 1:
        raise InputError("--iterations must be >= 1")
    if args.norm_target < 1:
        raise InputError("--norm-target must be >= 1")
    out_dir = args.out_dir or os.environ.get("SQF_OUT_DIR") or "."
    lambda_path = getattr(args, "lambda_file", None) or os.path.join(
        out_dir, f"lambda_p{p}_a{alphabet}.txt"
    )
    certificate_path = getattr(args, "certificate_file", None) or os.path.join(
        out_dir, f"certificate_p{p}_a{alphabet}_l{list_size}.txt"
    )
    return RunConfig(
        p=p,
        alphabet_size=alphabet,
        list_size=list_size,
        iterations=args.iterations,
        norm_target=args.norm_target,
        out_dir=out_dir,
        validate=args.validate,
        threads=_parse_threads(args.threads),
        max_mem_bytes=_parse_mem(args.max_mem),
        allow_large=args.allow_large,
        lambda_path=lambda_path,
        certificate_path=certificate_path,
    )


def _guard_build(cfg: RunConfig) -> None:
    projected_nodes = estimate_lambda_size(cfg.p, max(2, min(cfg.alphabet_size, cfg.p)))
    node_bytes = 8 * cfg.alphabet_size + 2 * cfg.p + 56
    projected = int(projected_nodes * node_bytes)
    if projected > cfg.max_mem_bytes and not cfg.allow_large:
        raise ResourceGuardError(
            f"projected state set is about {int(projected_nodes)} nodes "
            f"(~{projected / (1 << 30):.1f} GiB > budget "
            f"{cfg.max_mem_bytes / (1 << 30):.1f} GiB); "
            "pass --allow-large to override"
        )


def _peak_mem_mib() -> float:
    return resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024.0


def _load_or_build_lambda(cfg: RunConfig, write: bool = True):
    if os.path.exists(cfg.lambda_path):
        lam = read_lambda_file(cfg.lambda_path)
        if lam.p != cfg.p or lam.alphabet_size != cfg.alphabet_size:
            raise InputError(
                f"{cfg.lambda_path} holds p={lam.p} alphabet={lam.alphabet_size}, "
                f"run asked for p={cfg.p} alphabet={cfg.alphabet_size}"
            )
    else:
        _guard_build(cfg)
        lam = build_lambda(cfg.p, cfg.alphabet_size)
        if write:
            os.makedirs(cfg.out_dir, exist_ok=True)
            write_lambda_file(lam, cfg.lambda_path)
    if cfg.validate:
        validate_lambda(lam)
    return lam


def cmd_build(args) -> int:
    cfg = _config(args)
    _guard_build(cfg)
    t0 = time.perf_counter()
    lam = build_lambda(cfg.p, cfg.alphabet_size)
    wall = time.perf_counter() - t0
    os.makedirs(cfg.out_dir, exist_ok=True)
    write_lambda_file(lam, cfg.lambda_path)
    if args.graph_file:
        write_graph_file(build_graph(lam), args.graph_file)
    print(f"lambda: count={len(lam)} p={cfg.p} alphabet={cfg.alphabet_size}")
    print(f"file: {cfg.lambda_path}")
    print(f"digest: {lam.digest}")
    print(f"stats: wall={wall:.3f}s peak_mem={_peak_mem_mib():.1f}MiB")
    return EXIT_OK


def cmd_iterate(args) -> int:
    cfg = _config(args)
    lam = _load_or_build_lambda(cfg)
    g = build_graph(lam)
    if args.seed_vector:
        c, digest = read_weights_file(args.seed_vector)
        if digest and digest != lam.digest:
            raise VerificationError(
                f"digest mismatch: seed weights from {digest}, state set is {lam.digest}"
            )
        c = list(c)
        if len(c) != g.vertex_count:
            raise InputError("seed vector size does not match the state set")
    else:
        c = [cfg.norm_target] * g.vertex_count
    for _ in range(cfg.iterations):
        c = iterate(g, c, cfg.list_size)
        c = renormalize(c, cfg.norm_target)
    out = args.weights_file or os.path.join(
        cfg.out_dir, f"weights_p{cfg.p}_a{cfg.alphabet_size}_l{cfg.list_size}.txt"
    )
    os.makedirs(cfg.out_dir, exist_ok=True)
    write_weights_file(c, lam.digest, out)
    print(f"weights: count={len(c)} iterations={cfg.iterations} file={out}")
    return EXIT_OK


def cmd_certify(args) -> int:
    cfg = _config(args)
    lam = _load_or_build_lambda(cfg)
    g = build_graph(lam)
    seed = None
    if args.seed_vector:
        seed, digest = read_weights_file(args.seed_vector)
        if digest and digest != lam.digest:
            raise VerificationError(
                f"digest mismatch: seed weights from {digest}, state set is {lam.digest}"
            )
    cert = run_fixed_point(g, cfg.iterations, cfg.norm_target, cfg.list_size, seed)
    os.makedirs(cfg.out_dir, exist_ok=True)
    write_certificate_file(cert, cfg.certificate_path)
    print(
        f"certificate: p={cert.p} alphabet={cert.alphabet_size} "
        f"list_size={cert.list_size} states={len(cert.weights)}"
    )
    print(f"alpha = {fraction_str(cert.alpha)} = {approx_str(cert.alpha)}")
    print(f"file: {cfg.certificate_path}")
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _config(args)
    cert = read_certificate_file(cfg.certificate_path)
    lam_path = args.lambda_file or os.path.join(
        cfg.out_dir, f"lambda_p{cert.p}_a{cert.alphabet_size}.txt"
    )
    if os.path.exists(lam_path):
        lam = read_lambda_file(lam_path)
    else:
        lam = build_lambda(cert.p, cert.alphabet_size)
    if cert.lambda_digest != lam.digest:
        raise VerificationError(
            f"digest mismatch: certificate says {cert.lambda_digest}, "
            f"state set is {lam.digest}"
        )
    g = build_graph(lam)
    bad = first_violation(g, cert)
    if bad is not None:
        word = word_to_str(lam.words[bad]) or "-"
        print(f"FAIL: inequality violated at vertex {bad} (word {word})")
        return EXIT_VERIFY
    print(f"certificate OK: alpha = {fraction_str(cert.alpha)} = {approx_str(cert.alpha)}")
    return EXIT_OK


def cmd_bound(args) -> int:
    cfg = _config(args)
    if args.alpha_override:
        try:
            alpha = Fraction(args.alpha_override)
        except ValueError:
            raise InputError(
                f"cannot parse --alpha-override {args.alpha_override!r}"
            ) from None
        p = cfg.p
        cert = None
        print(f"alpha = {fraction_str(alpha)} (override), p = {p}")
    else:
        cert = read_certificate_file(cfg.certificate_path)
        lam = build_lambda(cert.p, cert.alphabet_size)
        if cert.lambda_digest != lam.digest:
            raise VerificationError("digest mismatch between certificate and state set")
        bad = first_violation(build_graph(lam), cert)
        if bad is not None:
            print(f"FAIL: certificate does not verify (vertex {bad})")
            return EXIT_VERIFY
        alpha, p = cert.alpha, cert.p
        print(f"alpha = {fraction_str(alpha)} = {approx_str(alpha)}, p = {p}")
    beta = search_beta(alpha, p, BETA_PRECISION)
    if beta is None:
        print("no beta found: the growth condition has no solution on the search grid")
        return EXIT_OK
    print(f"beta = {fraction_str(beta)} = {approx_str(beta)}")
    if cert is not None:
        gb = growth_bound(cert, beta)
        print(
            "count of square-free words respecting any admissible list assignment"
            f" >= {fraction_str(gb.multiplicative_constant)} * beta^n"
        )
    print(f"count of square-free words >= ({fraction_str(beta)})^n for all n")
    return EXIT_OK


def cmd_estimate(args) -> int:
    if args.letters is None:
        args.letters = args.alphabet
    total = estimate_lambda_size(args.period, args.letters, strict_cells=args.strict_cells)
    print(f"estimate({args.period}, {args.letters}) = {fraction_str(total)}")
    print(f"  = {approx_str(total)}")
    return EXIT_OK


def cmd_oracle_brute_lambda(args) -> int:
    lam = oracle.brute_lambda(args.period, args.alphabet)
    print(f"count={len(lam)}")
    if not args.count_only:
        for w in sorted(lam, key=lambda w: (len(w), w)):
            print(word_to_str(w) if w else "-")
    return EXIT_OK


def cmd_oracle_count(args) -> int:
    print(oracle.count_squarefree(args.length, args.alphabet))
    return EXIT_OK


def cmd_oracle_game(args) -> int:
    cert = read_certificate_file(args.certificate_file) if args.certificate_file else None
    list_size = args.list_size if args.list_size is not None else args.alphabet - 1
    result = oracle.adversary_min_count(
        args.length, args.alphabet, list_size, cert, trace_path=args.trace
    )
    print(f"value={result.total_weight}")
    if result.by_state is not None:
        items = " ".join(f"{s}:{c}" for s, c in sorted(result.by_state.items()))
        print(f"by_state: {items}")
    return EXIT_OK


def cmd_oracle_growth(args) -> int:
    cert = read_certificate_file(args.certificate_file)
    checker = oracle.GrowthChecker(cert)
    if checker.beta is None:
        print("beta: none on grid; checking the unconditional inequality only")
    else:
        print(f"beta = {fraction_str(checker.beta)}")
    if args.exhaustive:
        reps, covered, failures = oracle.check_assignments_exhaustive(
            [checker], args.length
        )
        print(f"exhaustive: representatives={reps} covered={covered}")
        if failures:
            print(f"FAIL: first failing assignment prefix: {failures[0]}")
            return EXIT_VERIFY
    else:
        rng = Random(args.seed)
        for i in range(args.samples):
            assignment = oracle.random_assignment(
                rng, args.length, cert.alphabet_size, cert.list_size
            )
            if not checker.check(assignment):
                print(f"FAIL: sample {i}: {assignment}")
                return EXIT_VERIFY
        print(f"random: samples={args.samples} length={args.length} seed={args.seed}")
    print("growth check OK")
    return EXIT_OK


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--period", "-p", type=int, default=3, help="maximum square period")
    sub.add_argument("--alphabet", type=int, default=4, help="alphabet size")
    sub.add_argument("--list-size", type=int, default=None,
                     help="adversary list size (default: alphabet - 1)")
    sub.add_argument("--iterations", type=int, default=50)
    sub.add_argument("--norm-target", type=int, default=100000)
    sub.add_argument("--out-dir", default=None,
                     help="artifact directory (default: $SQF_OUT_DIR or .)")
    sub.add_argument("--validate", action="store_true",
                     help="re-check classification preconditions")
    sub.add_argument("--threads", default="auto")
    sub.add_argument("--max-mem", default="8G", help="memory budget for builds")
    sub.add_argument("--allow-large", action="store_true",
                     help="override the memory budget guard")
    sub.add_argument("--lambda-file", default=None)
    sub.add_argument("--certificate-file", default=None)
    sub.add_argument("--seed-vector", default=None,
                     help="weights file used as the starting vector")
    sub.add_argument("--strict-cells", action="store_true",
                     help="drop the length-1 row of the size estimator")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); bad input is exit 4 here
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sqfree", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    for name, func, desc in [
        ("build", cmd_build, "build the state set and write its file"),
        ("iterate", cmd_iterate, "run weight iterations and write a weights file"),
        ("certify", cmd_certify, "build, iterate, and write a verified certificate"),
        ("verify", cmd_verify, "re-verify a certificate file exactly"),
        ("bound", cmd_bound, "derive an exponential lower bound from a certificate"),
    ]:
        sub = subs.add_parser(name, help=desc)
        _add_common(sub)
        sub.set_defaults(func=func)
        if name == "build":
            sub.add_argument("--graph-file", default=None,
                             help="also write the transition graph file")
        if name == "iterate":
            sub.add_argument("--weights-file", default=None)
        if name == "bound":
            sub.add_argument("--alpha-override", default=None,
                             help="rational alpha like 13948/10721, skips the certificate")

    est = subs.add_parser("estimate", help="closed-form ceiling on the state-set size")
    est.add_argument("--period", "-p", type=int, required=True)
    est.add_argument("--alphabet", type=int, default=4)
    est.add_argument("--letters", type=int, default=None,
                     help="letter budget of the estimate (default: alphabet)")
    est.add_argument("--strict-cells", action="store_true")
    est.set_defaults(func=cmd_estimate)

    orc = subs.add_parser("oracle", help="independent brute-force checks")
    osubs = orc.add_subparsers(dest="oracle_command", required=True)

    ob = osubs.add_parser("brute-lambda", help="naive state-set enumeration")
    ob.add_argument("--period", "-p", type=int, required=True)
    ob.add_argument("--alphabet", type=int, default=4)
    ob.add_argument("--count-only", action="store_true")
    ob.set_defaults(func=cmd_oracle_brute_lambda)

    oc = osubs.add_parser("count", help="exhaustive square-free count")
    oc.add_argument("--length", "-n", type=int, required=True)
    oc.add_argument("--alphabet", type=int, default=4)
    oc.set_defaults(func=cmd_oracle_count)

    og = osubs.add_parser("game", help="adaptive list-adversary minimax value")
    og.add_argument("--length", "-n", type=int, required=True)
    og.add_argument("--alphabet", type=int, default=4)
    og.add_argument("--list-size", type=int, default=None)
    og.add_argument("--certificate-file", default=None,
                    help="switch to the weighted short-square game")
    og.add_argument("--trace", default=None,
                    help="write the adversary's chosen lists, one per line")
    og.set_defaults(func=cmd_oracle_game)

    ow = osubs.add_parser("growth", help="per-assignment growth inequalities")
    ow.add_argument("--certificate-file", required=True)
    ow.add_argument("--length", "-n", type=int, default=8)
    ow.add_argument("--samples", type=int, default=100)
    ow.add_argument("--seed", type=int, default=0)
    ow.add_argument("--exhaustive", action="store_true")
    ow.set_defaults(func=cmd_oracle_growth)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceGuardError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except MemoryError:
        print("refused: out of memory", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
