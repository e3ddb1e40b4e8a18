"""Fixed-point weight iteration and exact certificate verification.

Everything in this module is integer or rational arithmetic; there is no
floating point on any decision path. A certificate asserts that scaling the
weight of every state by alpha never exceeds the worst-list weighted
extension sum of that state, which is the inequality the counting theorems
consume.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, VerificationError
from .graph import TransitionGraph, min_list_sum


@dataclass(frozen=True)
class Certificate:
    p: int
    alphabet_size: int
    list_size: int
    weights: tuple[int, ...]
    alpha: Fraction
    lambda_digest: str


def iterate(g: TransitionGraph, c, list_size: int | None = None) -> list[int]:
    """One simultaneous update: every slot becomes its min-list sum.

    Reads the previous vector only (two-buffer, Jacobi style); the input is
    never modified.
    """
    if list_size is None:
        list_size = g.alphabet_size - 1
    if len(c) != g.vertex_count:
        raise InputError(f"vector has {len(c)} slots, graph has {g.vertex_count}")
    return [min_list_sum(g, v, c, list_size) for v in range(g.vertex_count)]


def renormalize(c, target_avg: int) -> list[int]:
    """Scale so the average lands at ``target_avg``, rounding every slot down."""
    if target_avg < 1:
        raise InputError("renormalization target must be >= 1")
    total = sum(c)
    if total == 0:
        raise InputError("cannot renormalize an all-zero vector")
    n = len(c)
    return [v * target_avg * n // total for v in c]


def compute_alpha(g: TransitionGraph, c, list_size: int | None = None) -> Fraction:
    """Minimum growth min-list-sum(v)/c(v) over vertices with c(v) > 0."""
    if list_size is None:
        list_size = g.alphabet_size - 1
    best: Fraction | None = None
    for v in range(g.vertex_count):
        if c[v] <= 0:
            continue
        growth = Fraction(min_list_sum(g, v, c, list_size), c[v])
        if best is None or growth < best:
            best = growth
    if best is None:
        raise InputError("cannot compute growth of an all-zero vector")
    return best


def first_violation(g: TransitionGraph, cert: Certificate) -> int | None:
    """Vertex id of the first failed certificate inequality, or None."""
    if len(cert.weights) != g.vertex_count:
        raise VerificationError(
            f"dimension mismatch: certificate has {len(cert.weights)} weights, "
            f"graph has {g.vertex_count} vertices"
        )
    if cert.lambda_digest and g.lambda_digest and cert.lambda_digest != g.lambda_digest:
        raise VerificationError(
            f"digest mismatch: certificate built from {cert.lambda_digest}, "
            f"graph from {g.lambda_digest}"
        )
    if cert.weights[0] <= 0:
        return 0
    num, den = cert.alpha.numerator, cert.alpha.denominator
    for v in range(g.vertex_count):
        if num * cert.weights[v] > den * min_list_sum(g, v, cert.weights, cert.list_size):
            return v
    return None


def verify_certificate(g: TransitionGraph, cert: Certificate) -> bool:
    """Exact check of the certificate inequality at every vertex.

    True requires a positive weight at the root state and, for every vertex,
    alpha * weight(v) <= min-list-sum(v) compared via cross-multiplied
    integers. Zero-weight vertices satisfy their inequality trivially.
    """
    return first_violation(g, cert) is None


def run_fixed_point(
    g: TransitionGraph,
    iterations: int,
    target_avg: int,
    list_size: int | None = None,
    seed_vector=None,
) -> Certificate:
    """Iterate-and-renormalize from a constant start, then certify the result.

    The returned certificate has passed verify_certificate; if verification
    would fail the run aborts instead of returning.
    """
    if iterations < 1:
        raise InputError("iterations must be >= 1")
    if list_size is None:
        list_size = g.alphabet_size - 1
    n = g.vertex_count
    if seed_vector is not None:
        c = [int(v) for v in seed_vector]
        if len(c) != n:
            raise InputError(f"seed vector has {len(c)} slots, graph has {n}")
        if any(v < 0 for v in c):
            raise InputError("seed vector has negative entries")
    else:
        c = [target_avg] * n
    for _ in range(iterations):
        c = iterate(g, c, list_size)
        # Some states are dead ends against the worst list (every letter of
        # some list blocked) and their weights legitimately sink to zero;
        # they satisfy their inequality trivially and the growth minimum
        # skips them. Only the root going dark is fatal.
        if c[0] == 0:
            raise VerificationError("weight collapsed to zero at vertex 0 (root)")
        c = renormalize(c, target_avg)
        if c[0] == 0:
            raise VerificationError("renormalization floored vertex 0 (root) to zero")
    cert = Certificate(
        p=g.p,
        alphabet_size=g.alphabet_size,
        list_size=list_size,
        weights=tuple(c),
        alpha=compute_alpha(g, c, list_size),
        lambda_digest=g.lambda_digest,
    )
    bad = first_violation(g, cert)
    if bad is not None:
        raise VerificationError(f"fixed point failed self-verification at vertex {bad}")
    return cert


def weights_file_text(weights, lambda_digest: str) -> str:
    lines = ["weights v1", f"count={len(weights)} lambda_digest={lambda_digest}"]
    lines.extend(str(v) for v in weights)
    return "\n".join(lines) + "\n"


def write_weights_file(weights, lambda_digest: str, path: str) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(weights_file_text(weights, lambda_digest))


def read_weights_file(path: str) -> tuple[tuple[int, ...], str]:
    with open(path, encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if len(lines) < 2 or lines[0] != "weights v1":
        raise InputError(f"{path}: not a weights v1 file")
    try:
        fields = dict(kv.split("=", 1) for kv in lines[1].split())
        count = int(fields["count"])
        digest = fields["lambda_digest"]
    except (KeyError, ValueError) as exc:
        raise InputError(f"{path}: bad header: {lines[1]!r}") from exc
    body = lines[2:]
    if len(body) != count:
        raise InputError(f"{path}: header says count={count}, found {len(body)}")
    try:
        weights = tuple(int(s) for s in body)
    except ValueError as exc:
        raise InputError(f"{path}: non-integer weight line") from exc
    return weights, digest


def certificate_file_text(cert: Certificate) -> str:
    lines = [
        "certificate v1",
        f"p={cert.p} alphabet={cert.alphabet_size} list_size={cert.list_size}",
        f"alpha={cert.alpha.numerator}/{cert.alpha.denominator}",
        f"lambda_digest={cert.lambda_digest}",
        "weights=inline",
    ]
    lines.extend(str(v) for v in cert.weights)
    return "\n".join(lines) + "\n"


def write_certificate_file(cert: Certificate, path: str) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(certificate_file_text(cert))


def read_certificate_file(path: str) -> Certificate:
    with open(path, encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if len(lines) < 5 or lines[0] != "certificate v1":
        raise InputError(f"{path}: not a certificate v1 file")
    try:
        fields = dict(kv.split("=", 1) for kv in lines[1].split())
        p = int(fields["p"])
        alphabet_size = int(fields["alphabet"])
        list_size = int(fields["list_size"])
        alpha_num, alpha_den = lines[2].removeprefix("alpha=").split("/")
        alpha = Fraction(int(alpha_num), int(alpha_den))
        digest = lines[3].removeprefix("lambda_digest=")
        source = lines[4].removeprefix("weights=")
    except (KeyError, ValueError) as exc:
        raise InputError(f"{path}: malformed certificate header") from exc
    if source == "inline":
        try:
            weights = tuple(int(s) for s in lines[5:])
        except ValueError as exc:
            raise InputError(f"{path}: non-integer weight line") from exc
    else:
        wpath = source if os.path.isabs(source) else os.path.join(
            os.path.dirname(path) or ".", source
        )
        weights, wdigest = read_weights_file(wpath)
        if wdigest != digest:
            raise VerificationError(
                f"digest mismatch: certificate says {digest}, "
                f"weights file says {wdigest}"
            )
    return Certificate(p, alphabet_size, list_size, weights, alpha, digest)
