import random

import pytest

from sqfree.errors import InputError, VerificationError
from sqfree.lambda_set import (
    WALK_START,
    build_lambda,
    classify,
    lambda_file_text,
    read_lambda_file,
    step,
    walk_step,
    write_lambda_file,
)
from sqfree.words import find_square, is_squarefree, square_period_at_end, word_from_str

w = word_from_str


def _word_strs(lam):
    return ["".join("0123456789abcdefghijk"[a] for a in word) for word in lam.words]


def test_build_small_sets(lam2, lam3):
    assert _word_strs(build_lambda(1, 4)) == ["", "0"]
    assert _word_strs(lam2) == ["", "0", "01", "010"]
    # p=3 adds the three-distinct-letter suffix states of the period-3 square
    assert _word_strs(lam3) == ["", "0", "01", "010", "012", "0120", "01201"]


def test_build_validates_arguments():
    with pytest.raises(InputError):
        build_lambda(0, 4)
    with pytest.raises(InputError):
        build_lambda(2, 1)
    with pytest.raises(InputError):
        build_lambda(2, 22)


@pytest.mark.parametrize("p,alphabet", [(1, 4), (2, 4), (3, 4), (4, 4), (4, 3), (5, 4)])
def test_stored_words_invariants(p, alphabet):
    lam = build_lambda(p, alphabet)
    seen = set(lam.words)
    assert lam.words[0] == ()
    for word in lam.words:
        assert len(word) <= 2 * p - 1
        assert is_squarefree(word)
        # normalized: distinct letters appear in first-occurrence order 0,1,2,...
        assert list(dict.fromkeys(word)) == list(range(len(set(word))))
        # prefix-closed
        for k in range(len(word)):
            assert word[:k] in seen
    # canonical id order
    assert list(lam.words) == sorted(lam.words, key=lambda v: (len(v), v))


def test_find_walks_the_trie(lam3):
    assert lam3.find(()) == 0
    assert lam3.find(w("012")) == 4
    assert lam3.find(w("0121")) == -1
    assert lam3.find((9,)) == -1


def test_classify_examples(lam2, lam3):
    assert classify((), lam2) == 0
    assert classify(w("3"), lam2) == 1  # any single letter renames to "0"
    # longest matching suffix of 0102 is 102, which renames to 012 (id 4)
    assert classify(w("0102"), lam3) == 4
    assert lam3.words[4] == w("012")


def test_classify_validate_rejects_short_squares(lam2):
    with pytest.raises(VerificationError):
        classify(w("1010"), lam2, validate=True)
    # period above the bound is fine: 01230123 has only a period-4 square
    assert classify(w("01230123"), lam2, validate=True) >= 0


def test_step_examples(lam2):
    for a in range(4):
        assert step(0, a, lam2) == 1
    assert step(1, 0, lam2) is None  # period-1 square
    assert step(1, 1, lam2) == 2
    assert step(2, 0, lam2) == 3  # 01 + 0 -> 010
    assert step(3, 0, lam2) is None  # period 1
    assert step(3, 1, lam2) is None  # period 2 re-creates 0101
    assert step(3, 2, lam2) == 2  # 0102 falls back to the 01 class
    with pytest.raises(InputError):
        step(0, 4, lam2)


def _random_short_squarefree(rng, length, alphabet, p):
    word = ()
    while len(word) < length:
        choices = [
            a
            for a in range(alphabet)
            if square_period_at_end(word + (a,), min(p, (len(word) + 1) // 2)) is None
        ]
        if not choices:
            break
        word += (rng.choice(choices),)
    return word


@pytest.mark.parametrize("p", [1, 2, 3, 4, 5])
def test_classify_fold_agrees_with_direct(p):
    lam = build_lambda(p, 4)
    rng = random.Random(100 + p)
    for _ in range(30):
        word = _random_short_squarefree(rng, 40, 4, p)
        assert find_square(word, p) is None
        state, sigma = WALK_START
        for a in word:
            res = walk_step(state, sigma, a, lam)
            assert res is not None
            state, sigma = res
        assert state == classify(word, lam, validate=True)
        # sigma really is the renaming onto the representative
        suffix = word[len(word) - len(lam.words[state]):]
        assert tuple(sigma[c] for c in lam.words[state]) == suffix


def test_walk_step_blocks_exactly_when_the_word_does(lam3):
    rng = random.Random(9)
    for _ in range(200):
        word = _random_short_squarefree(rng, rng.randrange(1, 14), 4, 3)
        state, sigma = WALK_START
        for a in word:
            state, sigma = walk_step(state, sigma, a, lam3)
        for a in range(4):
            really_blocked = (
                square_period_at_end(word + (a,), 3) is not None
            )
            assert (walk_step(state, sigma, a, lam3) is None) == really_blocked


def test_state_length_grows_by_at_most_one(lam3, lam4):
    for lam in (lam3, lam4):
        for s in range(len(lam)):
            for a in range(lam.alphabet_size):
                t = step(s, a, lam)
                if t is not None:
                    assert len(lam.words[t]) <= len(lam.words[s]) + 1


@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_alphabet_independence_beyond_threshold(p):
    # the stored words stop depending on the alphabet once it is large enough
    base = build_lambda(p, 2 * p - 1 if p > 1 else 2).words
    for alphabet in (2 * p, 2 * p + 3):
        assert build_lambda(p, alphabet).words == base


def test_file_roundtrip(tmp_path, lam3):
    path = tmp_path / "lambda.txt"
    write_lambda_file(lam3, str(path))
    text = path.read_text()
    assert text.startswith("lambda v1\np=3 alphabet=4 count=7\n-\n0\n")
    back = read_lambda_file(str(path))
    assert back.words == lam3.words
    assert back.children == lam3.children
    assert back.digest == lam3.digest
    assert lambda_file_text(back) == text


def test_file_rejects_corruption(tmp_path, lam3):
    path = tmp_path / "lambda.txt"
    write_lambda_file(lam3, str(path))
    lines = path.read_text().splitlines()
    lines[2], lines[3] = lines[3], lines[2]  # break canonical order
    bad = tmp_path / "bad.txt"
    bad.write_text("\n".join(lines) + "\n")
    with pytest.raises(InputError):
        read_lambda_file(str(bad))
    bad.write_text("nonsense\n")
    with pytest.raises(InputError):
        read_lambda_file(str(bad))
