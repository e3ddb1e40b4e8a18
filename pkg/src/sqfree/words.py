"""Word primitives over small integer alphabets.

Words are plain tuples of ints. The text form used by every file format
writes one base-36 digit per letter (0-9 then a-k), which covers alphabets
up to size 21.
"""

from __future__ import annotations

from .errors import InputError

Word = tuple[int, ...]

MAX_ALPHABET = 21
_DIGITS = "0123456789abcdefghijk"
_VALUES = {c: i for i, c in enumerate(_DIGITS)}


def check_letters(w: Word, alphabet_size: int) -> None:
    if not 1 <= alphabet_size <= MAX_ALPHABET:
        raise InputError(f"alphabet size {alphabet_size} outside [1, {MAX_ALPHABET}]")
    for a in w:
        if not 0 <= a < alphabet_size:
            raise InputError(f"letter {a} outside alphabet of size {alphabet_size}")


def normalize(w: Word, alphabet_size: int) -> Word:
    """Rename letters in order of first occurrence to 0,1,2,...

    The result is the lexicographically least word obtainable from ``w`` by
    a bijection of the alphabet; positions carry equal letters in the result
    exactly when they do in ``w``.
    """
    check_letters(w, alphabet_size)
    seen: dict[int, int] = {}
    out = []
    for a in w:
        if a not in seen:
            seen[a] = len(seen)
        out.append(seen[a])
    return tuple(out)


def find_square(w: Word, max_period: int) -> tuple[int, int] | None:
    """First square factor uu with 1 <= |u| <= max_period, or None.

    "First" means least start position, then least period, so the answer is
    deterministic when several squares occur.
    """
    if max_period < 1:
        raise InputError("max_period must be >= 1")
    n = len(w)
    for start in range(n - 1):
        limit = min(max_period, (n - start) // 2)
        for q in range(1, limit + 1):
            if w[start:start + q] == w[start + q:start + 2 * q]:
                return start, q
    return None


def is_squarefree(w: Word, max_period: int | None = None) -> bool:
    if len(w) < 2:
        return True
    cap = len(w) // 2 if max_period is None else min(max_period, len(w) // 2)
    if cap < 1:
        return True
    return find_square(w, cap) is None


def square_period_at_end(w: Word, max_period: int) -> int | None:
    """Period of a square ending at the last letter of ``w``, if any.

    Sufficient to maintain square-freeness incrementally: when the prefix is
    square-free, any new square must end at the appended letter.
    """
    n = len(w)
    for q in range(1, min(max_period, n // 2) + 1):
        if w[n - 2 * q:n - q] == w[n - q:]:
            return q
    return None


def is_minimal_square(w: Word) -> bool:
    """True iff w = uu with u non-empty and every proper factor of w is square-free.

    Every proper factor is a factor of w[1:] or w[:-1], so checking those two
    suffices.
    """
    n = len(w)
    if n == 0 or n % 2:
        return False
    half = n // 2
    if w[:half] != w[half:]:
        return False
    return is_squarefree(w[1:]) and is_squarefree(w[:-1])


def word_to_str(w: Word) -> str:
    try:
        return "".join(_DIGITS[a] for a in w)
    except IndexError:
        raise InputError(f"letter out of range for text form: {w!r}") from None


def word_from_str(s: str) -> Word:
    out = []
    for c in s:
        if c not in _VALUES:
            raise InputError(f"invalid word character {c!r}")
        out.append(_VALUES[c])
    return tuple(out)
