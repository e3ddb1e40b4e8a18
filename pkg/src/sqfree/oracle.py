"""Independent brute-force ground truth at desk scale.

Nothing here reuses the trie construction or its incremental shortcuts: the
state set is re-derived by scanning every candidate square, square-free
counting is a plain depth-first search with full square checking, and the
adaptive list adversary is solved as a min-sum game tree. The weighted game
and the growth checker do consult the transition graph, but only to label
words with their state; word admissibility is always decided by direct
square tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .bounds import search_beta
from .errors import InputError, ResourceGuardError, VerificationError
from .graph import build_graph
from .lambda_set import ROOT, build_lambda, classify
from .weights import Certificate, verify_certificate
from .words import MAX_ALPHABET, Word, normalize, square_period_at_end

BRUTE_PERIOD_LIMIT = 6


def _contains_square(w: Word) -> bool:
    # scan every (start, period) pair; no incrementality
    n = len(w)
    for start in range(n):
        for q in range(1, (n - start) // 2 + 1):
            if w[start:start + q] == w[start + q:start + 2 * q]:
                return True
    return False


def _proper_factors_squarefree(w: Word) -> bool:
    n = len(w)
    # longest factors first: non-minimal squares usually die immediately
    for length in range(n - 1, 1, -1):
        for start in range(n - length + 1):
            if _contains_square(w[start:start + length]):
                return False
    return True


def brute_lambda(p: int, alphabet_size: int) -> set[Word]:
    """Re-derive the state set naively: try every square uu with |u| <= p,
    keep the minimal ones, normalize every proper prefix separately."""
    if p < 1:
        raise InputError("period bound must be >= 1")
    if p > BRUTE_PERIOD_LIMIT:
        raise ResourceGuardError(
            f"brute_lambda is guarded at p <= {BRUTE_PERIOD_LIMIT}"
        )
    if not 2 <= alphabet_size <= MAX_ALPHABET:
        raise InputError(f"alphabet size must be in [2, {MAX_ALPHABET}]")
    found: set[Word] = {()}
    for m in range(1, p + 1):
        for u in product(range(alphabet_size), repeat=m):
            w = u + u
            if _proper_factors_squarefree(w):
                for k in range(1, len(w)):
                    found.add(normalize(w[:k], alphabet_size))
    return found


def _count_guard(n: int, alphabet_size: int) -> None:
    if not 2 <= alphabet_size <= MAX_ALPHABET:
        raise InputError(f"alphabet size must be in [2, {MAX_ALPHABET}]")
    if n < 0:
        raise InputError("length must be >= 0")
    limit = max(3, 75 // alphabet_size)
    if n > limit:
        raise ResourceGuardError(
            f"exhaustive search guarded at n <= {limit} for alphabet {alphabet_size}"
        )


def count_squarefree(n: int, alphabet_size: int) -> int:
    """Exact number of square-free words of length n, by depth-first search."""
    _count_guard(n, alphabet_size)

    def rec(w: Word) -> int:
        if len(w) == n:
            return 1
        total = 0
        for a in range(alphabet_size):
            ext = w + (a,)
            if square_period_at_end(ext, len(ext) // 2) is None:
                total += rec(ext)
        return total

    return rec(())


@dataclass
class WeightedCount:
    """Game value: total weight plus, when states apply, counts per state."""

    total_weight: int
    by_state: dict[int, int] | None = None


def _min_sum(per_letter_values: list[int], list_size: int) -> int:
    return sum(sorted(per_letter_values)[:list_size])


def _adversary_list(per_letter_values: list[int], list_size: int) -> tuple[int, ...]:
    # drop the largest values, preferring to drop larger letters on ties,
    # which makes the kept list the lexicographically least minimizer
    order = sorted(range(len(per_letter_values)),
                   key=lambda a: (per_letter_values[a], a), reverse=True)
    dropped = set(order[:len(per_letter_values) - list_size])
    return tuple(a for a in range(len(per_letter_values)) if a not in dropped)


def _exact_game_value(w: Word, remaining: int, alphabet_size: int, list_size: int) -> int:
    if remaining == 0:
        return 1
    vals = []
    for a in range(alphabet_size):
        ext = w + (a,)
        if square_period_at_end(ext, len(ext) // 2) is None:
            vals.append(_exact_game_value(ext, remaining - 1, alphabet_size, list_size))
        else:
            vals.append(0)
    return _min_sum(vals, list_size)


def _rebuild_machinery(cert: Certificate):
    lam = build_lambda(cert.p, cert.alphabet_size)
    if cert.lambda_digest and cert.lambda_digest != lam.digest:
        raise VerificationError(
            "certificate digest does not match the rebuilt state set"
        )
    return lam, build_graph(lam)


def adversary_min_count(
    n: int,
    alphabet_size: int,
    list_size: int,
    certificate: Certificate | None = None,
    trace_path: str | None = None,
) -> WeightedCount:
    """Minimax count against an adversary choosing each list adaptively.

    Unweighted: exact square-freeness, full-word game tree. With a
    certificate: the short-square game on the certificate's states, counting
    total weight, which is the object the certificate inequality bounds.
    """
    if not 1 <= list_size <= alphabet_size:
        raise InputError(f"list size {list_size} outside [1, {alphabet_size}]")
    if certificate is None:
        _count_guard(n, alphabet_size)
        value = _exact_game_value((), n, alphabet_size, list_size)
        if trace_path is not None:
            _write_exact_trace(trace_path, n, alphabet_size, list_size)
        return WeightedCount(value, None)

    if certificate.alphabet_size != alphabet_size:
        raise InputError("certificate alphabet does not match the request")
    lam, g = _rebuild_machinery(certificate)
    if (n + 1) * len(lam) > 5_000_000:
        raise ResourceGuardError(
            f"weighted game guarded: n={n} with {len(lam)} states is too large"
        )
    weights = certificate.weights
    memo: dict[tuple[int, int], tuple[int, dict[int, int]]] = {}

    def rec(remaining: int, state: int) -> tuple[int, dict[int, int]]:
        key = (remaining, state)
        if key in memo:
            return memo[key]
        if remaining == 0:
            res = (weights[state], {state: 1})
        else:
            children: list[tuple[int, dict[int, int]] | None] = []
            vals = []
            for a in range(alphabet_size):
                t = g.letter_map[state][a]
                if t is None:
                    children.append(None)
                    vals.append(0)
                else:
                    child = rec(remaining - 1, t)
                    children.append(child)
                    vals.append(child[0])
            kept = _adversary_list(vals, list_size)
            counts: dict[int, int] = {}
            total = 0
            for a in kept:
                if children[a] is None:
                    continue
                total += children[a][0]
                for s, cnt in children[a][1].items():
                    counts[s] = counts.get(s, 0) + cnt
            res = (total, counts)
        memo[key] = res
        return res

    total, counts = rec(n, ROOT)
    if trace_path is not None:
        _write_weighted_trace(trace_path, n, g, weights, list_size, rec)
    return WeightedCount(total, dict(counts))


def _list_to_line(lst) -> str:
    digits = "0123456789abcdefghijk"
    return "".join(digits[a] for a in sorted(lst))


def _write_exact_trace(path: str, n: int, alphabet_size: int, list_size: int) -> None:
    # canonical play-through: adversary's list, then the least surviving letter
    lines = []
    w: Word = ()
    for remaining in range(n, 0, -1):
        vals = []
        for a in range(alphabet_size):
            ext = w + (a,)
            if square_period_at_end(ext, len(ext) // 2) is None:
                vals.append(_exact_game_value(ext, remaining - 1, alphabet_size, list_size))
            else:
                vals.append(0)
        kept = _adversary_list(vals, list_size)
        lines.append(_list_to_line(kept))
        nxt = [a for a in kept if square_period_at_end(w + (a,), (len(w) + 1) // 2) is None]
        if not nxt:
            break
        w = w + (nxt[0],)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _write_weighted_trace(path, n, g, weights, list_size, rec) -> None:
    lines = []
    state = ROOT
    for remaining in range(n, 0, -1):
        vals = []
        for a in range(g.alphabet_size):
            t = g.letter_map[state][a]
            vals.append(0 if t is None else rec(remaining - 1, t)[0])
        kept = _adversary_list(vals, list_size)
        lines.append(_list_to_line(kept))
        nxt = [a for a in kept if g.letter_map[state][a] is not None]
        if not nxt:
            break
        state = g.letter_map[state][nxt[0]]
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def all_lists(alphabet_size: int, list_size: int) -> list[tuple[int, ...]]:
    return list(combinations(range(alphabet_size), list_size))


def random_assignment(rng, length: int, alphabet_size: int, list_size: int):
    options = all_lists(alphabet_size, list_size)
    return tuple(options[rng.randrange(len(options))] for _ in range(length))


class GrowthChecker:
    """Per-assignment test of the inequalities a verified certificate implies.

    For a fixed list assignment let W_n be the total weight of the exactly
    square-free words of length n respecting it. Two checks are available:

    * always: W_{n+1} >= alpha*W_n - sum of W_{n+1-i} over periods i > p,
      the engine behind the growth theorem, valid for every verified
      certificate;
    * when a beta passing check_beta_main exists for (alpha, p):
      W_{n+1} >= beta*W_n.

    Word admissibility uses direct square tests; the transition graph is
    consulted only to carry each word's state for the weight lookup.
    """

    def __init__(self, certificate: Certificate, beta="auto"):
        self.cert = certificate
        self.lam, self.graph = _rebuild_machinery(certificate)
        if not verify_certificate(self.graph, certificate):
            raise VerificationError("growth check requires a verified certificate")
        self.weights = certificate.weights
        # Classification depends on the last 2p-1 letters only, so a suffix
        # cache makes repeated word labelling cheap. Real words must be
        # classified, not walked through the letter map: transitions there
        # are keyed by representative letter codes, which a renamed suffix
        # does not share.
        self._context = 2 * certificate.p - 1
        self._state_cache: dict[Word, int] = {}
        if beta == "auto":
            self.beta = search_beta(certificate.alpha, certificate.p, Fraction(1, 1000))
        else:
            self.beta = beta

    def state_of(self, w: Word) -> int:
        key = w[-self._context:] if len(w) > self._context else w
        state = self._state_cache.get(key)
        if state is None:
            state = classify(key, self.lam)
            self._state_cache[key] = state
        return state

    @property
    def alphabet_size(self) -> int:
        return self.cert.alphabet_size

    @property
    def list_size(self) -> int:
        return self.cert.list_size

    def _validate_assignment(self, assignment, n_max: int) -> None:
        if len(assignment) < n_max:
            raise InputError("assignment shorter than the requested length")
        for lst in assignment[:n_max]:
            letters = set(lst)
            if len(letters) != self.cert.list_size:
                raise InputError(f"list {lst!r} does not have size {self.cert.list_size}")
            if not all(0 <= a < self.alphabet_size for a in letters):
                raise InputError(f"list {lst!r} leaves the alphabet")

    def weighted_profile(self, assignment, n_max: int) -> list[int]:
        """W_0..W_{n_max} for the assignment, as exact integers."""
        self._validate_assignment(assignment, n_max)
        level: list[Word] = [()]
        prof = [self.weights[ROOT]]
        for i in range(n_max):
            nxt = []
            for w in level:
                for a in assignment[i]:
                    ext = w + (a,)
                    if square_period_at_end(ext, len(ext) // 2) is None:
                        nxt.append(ext)
            level = nxt
            prof.append(sum(self.weights[self.state_of(w)] for w in level))
        return prof

    def _step_ok(self, prof) -> bool:
        m = len(prof) - 1
        num, den = self.cert.alpha.numerator, self.cert.alpha.denominator
        correction = sum(prof[m - i] for i in range(self.cert.p + 1, m + 1))
        if den * (prof[m] + correction) < num * prof[m - 1]:
            return False
        if self.beta is not None:
            if prof[m] * self.beta.denominator < self.beta.numerator * prof[m - 1]:
                return False
        return True

    def check(self, assignment, n_max: int | None = None) -> bool:
        if n_max is None:
            n_max = len(assignment)
        prof = self.weighted_profile(assignment, n_max)
        return all(self._step_ok(prof[:m + 1]) for m in range(1, n_max + 1))


def check_weighted_growth(cert: Certificate, assignment, n_max: int | None = None) -> bool:
    return GrowthChecker(cert).check(assignment, n_max)


def check_assignments_exhaustive(checkers, n_max: int):
    """Run every checker over every assignment of length ``n_max``.

    Assignments sharing a prefix share their word sets, so the walk is a
    single tree over list choices. The first list is pinned to the canonical
    one: every assignment is carried onto one with that first list by a
    letter renaming, and renaming changes neither admissibility nor state
    weights. Returns (representatives_walked, assignments_covered, failures).
    """
    if not checkers:
        raise InputError("need at least one checker")
    alphabet_size = checkers[0].alphabet_size
    list_size = checkers[0].list_size
    for ch in checkers:
        if (ch.alphabet_size, ch.list_size) != (alphabet_size, list_size):
            raise InputError("checkers disagree on alphabet or list size")
    lists = all_lists(alphabet_size, list_size)
    failures: list[tuple] = []
    profiles = [[ch.weights[ROOT]] for ch in checkers]
    reps = 0

    def recurse(level, depth, chosen):
        nonlocal reps
        if depth == n_max:
            reps += 1
            return
        # valid one-letter extensions of each live word, computed once per
        # node and shared by the sibling list choices
        expanded = []
        for w in level:
            exts = []
            for a in range(alphabet_size):
                ext = w + (a,)
                if square_period_at_end(ext, len(ext) // 2) is None:
                    exts.append(
                        (a, ext, tuple(ch.weights[ch.state_of(ext)] for ch in checkers))
                    )
            expanded.append(exts)
        for lst in (lists[:1] if depth == 0 else lists):
            member = set(lst)
            child = []
            totals = [0] * len(checkers)
            for exts in expanded:
                for a, ext, wts in exts:
                    if a in member:
                        child.append(ext)
                        for ci, wt in enumerate(wts):
                            totals[ci] += wt
            ok = True
            for ci, ch in enumerate(checkers):
                profiles[ci].append(totals[ci])
                if not ch._step_ok(profiles[ci]):
                    failures.append((tuple(chosen) + (lst,), ci))
                    ok = False
            if ok:
                recurse(child, depth + 1, chosen + [lst])
            for prof in profiles:
                prof.pop()

    recurse([()], 0, [])
    covered = reps * len(lists)  # each representative stands for its renaming orbit
    return reps, covered, failures
