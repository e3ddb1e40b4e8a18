"""The state set: normalized proper prefixes of minimal squares of bounded period.

A word that avoids squares of period at most p is classified by the longest
suffix that, after renaming letters, is a proper prefix of some minimal
square of period <= p. These prefixes form a prefix-closed set, stored here
as a contiguous array of trie nodes with fixed-size child tables. Node ids
are assigned breadth-first by (length, lexicographic order), so id 0 is the
empty word.
"""

from __future__ import annotations

from dataclasses import dataclass

from .digest import fnv1a64
from .errors import InputError, VerificationError
from .words import (
    MAX_ALPHABET,
    Word,
    find_square,
    is_minimal_square,
    normalize,
    square_period_at_end,
    word_from_str,
    word_to_str,
)

ROOT = 0


@dataclass(frozen=True)
class LambdaSet:
    p: int
    alphabet_size: int
    words: tuple[Word, ...]
    children: tuple[tuple[int, ...], ...]  # children[v][a] = child id or -1
    digest: str

    def __len__(self) -> int:
        return len(self.words)

    def find(self, w: Word) -> int:
        """Id of ``w`` in the set, or -1."""
        v = ROOT
        for a in w:
            if not 0 <= a < self.alphabet_size:
                return -1
            v = self.children[v][a]
            if v < 0:
                return -1
        return v


def _normalized_squarefree_words(max_len: int, alphabet_size: int) -> list[Word]:
    # Normalized means the next letter never exceeds the number of distinct
    # letters used so far, so the permutation orbit is generated once.
    out: list[Word] = []

    def extend(w: Word, distinct: int) -> None:
        if w:
            out.append(w)
        if len(w) == max_len:
            return
        for a in range(min(alphabet_size, distinct + 1)):
            nw = w + (a,)
            if square_period_at_end(nw, len(nw) // 2) is None:
                extend(nw, distinct + (1 if a == distinct else 0))

    extend((), 0)
    return out


def minimal_squares(p: int, alphabet_size: int) -> list[Word]:
    """All normalized minimal squares uu with 1 <= |u| <= p, sorted."""
    squares = []
    for u in _normalized_squarefree_words(p, alphabet_size):
        uu = u + u
        if is_minimal_square(uu):
            squares.append(uu)
    squares.sort(key=lambda w: (len(w), w))
    return squares


def build_lambda(p: int, alphabet_size: int) -> LambdaSet:
    """Construct the full state set for period bound ``p``.

    Deterministic and canonical: the same (p, alphabet_size) always yields
    the same ids and the same digest.
    """
    if p < 1:
        raise InputError("period bound must be >= 1")
    if not 2 <= alphabet_size <= MAX_ALPHABET:
        raise InputError(f"alphabet size must be in [2, {MAX_ALPHABET}]")
    prefixes: set[Word] = {()}
    for uu in minimal_squares(p, alphabet_size):
        for k in range(1, len(uu)):  # proper prefixes, lengths 1..2|u|-1
            prefixes.add(uu[:k])
    words = tuple(sorted(prefixes, key=lambda w: (len(w), w)))
    index = {w: i for i, w in enumerate(words)}
    children = tuple(
        tuple(index.get(w + (a,), -1) for a in range(alphabet_size)) for w in words
    )
    lam = LambdaSet(p, alphabet_size, words, children, digest="")
    text = lambda_file_text(lam)
    object.__setattr__(lam, "digest", fnv1a64(text.encode("ascii")))
    return lam


def classify(w: Word, lam: LambdaSet, validate: bool = False) -> int:
    """Id of the longest stored word that is a suffix of ``w`` up to renaming.

    The empty word always matches, so a result exists. ``validate`` checks
    the precondition that ``w`` contains no square of period <= p.
    """
    if validate:
        sq = find_square(w, lam.p)
        if sq is not None:
            raise VerificationError(
                f"classify precondition violated: square of period {sq[1]} "
                f"at position {sq[0]} in {word_to_str(w)!r}"
            )
    n = len(w)
    for k in range(min(n, 2 * lam.p - 1), 0, -1):
        v = lam.find(normalize(w[n - k:], lam.alphabet_size))
        if v >= 0:
            return v
    return ROOT


def step(state: int, a: int, lam: LambdaSet) -> int | None:
    """Follow one letter from a state; None means the letter is blocked.

    The letter is appended to the state's representative, so it is a letter
    code relative to that normalized word, not a letter of some original
    word (a word's suffix matches its representative only up to renaming).
    Ranging over the whole alphabet, the codes and the concrete letters
    produce the same multiset of successors, which is what the transition
    graph aggregates; to track one concrete word letter by letter use
    walk_step, which carries the renaming along.
    """
    if not 0 <= a < lam.alphabet_size:
        raise InputError(f"letter {a} outside alphabet of size {lam.alphabet_size}")
    ext = lam.words[state] + (a,)
    if square_period_at_end(ext, lam.p) is not None:
        return None
    return classify(ext, lam)


WALK_START: tuple[int, tuple[int, ...]] = (ROOT, ())


def walk_step(
    state: int, sigma: tuple[int, ...], a: int, lam: LambdaSet
) -> tuple[int, tuple[int, ...]] | None:
    """Extend an incremental classification of a concrete word by letter ``a``.

    ``sigma`` maps the representative's letter codes to the word's actual
    letters. Returns the next (state, sigma), or None when the letter closes
    a square of period <= p. Folding this over a word from WALK_START ends
    in the same state as a direct classify of the whole word.
    """
    if not 0 <= a < lam.alphabet_size:
        raise InputError(f"letter {a} outside alphabet of size {lam.alphabet_size}")
    code = sigma.index(a) if a in sigma else len(sigma)
    ext = lam.words[state] + (code,)
    if square_period_at_end(ext, lam.p) is not None:
        return None
    nxt = classify(ext, lam)
    rep = lam.words[nxt]
    suffix = ext[len(ext) - len(rep):]
    actuals = sigma + (a,) if code == len(sigma) else sigma
    new_sigma = [-1] * len(set(rep))
    for rep_code, ext_code in zip(rep, suffix):
        new_sigma[rep_code] = actuals[ext_code]
    return nxt, tuple(new_sigma)


def validate_lambda(lam: LambdaSet) -> None:
    """Integrity pass over a built or loaded state set.

    Every stored word must avoid squares of period <= p, be prefix-closed,
    and classify back to its own id (a stored word is its own longest
    matching suffix). Raises VerificationError on the first violation.
    """
    for i, word in enumerate(lam.words):
        if word and lam.find(word[:-1]) < 0:
            raise VerificationError(
                f"state set is not prefix-closed at {word_to_str(word)!r}"
            )
        if classify(word, lam, validate=True) != i:
            raise VerificationError(
                f"word {word_to_str(word)!r} does not classify to its own id {i}"
            )


def lambda_file_text(lam: LambdaSet) -> str:
    lines = [
        "lambda v1",
        f"p={lam.p} alphabet={lam.alphabet_size} count={len(lam.words)}",
    ]
    lines.extend(word_to_str(w) if w else "-" for w in lam.words)
    return "\n".join(lines) + "\n"


def write_lambda_file(lam: LambdaSet, path: str) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(lambda_file_text(lam))


def read_lambda_file(path: str) -> LambdaSet:
    with open(path, encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if len(lines) < 2 or lines[0] != "lambda v1":
        raise InputError(f"{path}: not a lambda v1 file")
    try:
        fields = dict(kv.split("=", 1) for kv in lines[1].split())
        p = int(fields["p"])
        alphabet_size = int(fields["alphabet"])
        count = int(fields["count"])
    except (KeyError, ValueError) as exc:
        raise InputError(f"{path}: bad header: {lines[1]!r}") from exc
    body = lines[2:]
    if len(body) != count:
        raise InputError(f"{path}: header says count={count}, found {len(body)} words")
    words = tuple(() if s == "-" else word_from_str(s) for s in body)
    if list(words) != sorted(words, key=lambda w: (len(w), w)):
        raise InputError(f"{path}: words are not in canonical (length, lex) order")
    index = {w: i for i, w in enumerate(words)}
    children = tuple(
        tuple(index.get(w + (a,), -1) for a in range(alphabet_size)) for w in words
    )
    lam = LambdaSet(p, alphabet_size, words, children, digest="")
    object.__setattr__(lam, "digest", fnv1a64(lambda_file_text(lam).encode("ascii")))
    return lam
