import itertools
import random

import pytest

from analyzers.labels import (
    EPSILON,
    Label,
    PathClass,
    build_pda,
    cancels,
    classify_string,
    format_label_string,
    join,
    neg,
    pda_accepts,
    pos,
    reduce_label_string,
)
from kernel.terms import FunctionSymbol

F = FunctionSymbol("f", 1)
G = FunctionSymbol("g", 1)
H = FunctionSymbol("h", 2)

ALPHABET = [pos(F), pos(G), pos(H), neg(F), neg(G), neg(H)]


def labels(text):
    """Parse "f g ~g" into labels over f, g and h."""
    symbols = {"f": F, "g": G, "h": H}
    result = []
    for token in text.split():
        if token == "e":
            result.append(EPSILON)
        elif token.startswith("~"):
            result.append(neg(symbols[token[1:]]))
        else:
            result.append(pos(symbols[token]))
    return tuple(result)


def test_label_rendering():
    assert str(EPSILON) == "e"
    assert str(pos(F)) == "f"
    assert str(neg(F)) == "~f"
    assert format_label_string(()) == "e"
    assert format_label_string(labels("f ~g")) == "f ~g"


def test_epsilon_has_no_inverse():
    with pytest.raises(ValueError):
        Label(None, True)
    assert EPSILON.inverse() == EPSILON
    assert pos(F).inverse() == neg(F)


def test_only_f_then_inverse_cancels():
    assert cancels(pos(F), neg(F))
    assert not cancels(neg(F), pos(F))
    assert not cancels(pos(F), neg(G))


def test_join():
    assert join(EPSILON, pos(F)) == pos(F)
    assert join(neg(G), EPSILON) == neg(G)
    assert join(pos(G), neg(G)) == EPSILON
    assert join(pos(F), pos(F)) is None
    assert join(neg(G), pos(G)) is None


@pytest.mark.parametrize(
    "text,expected",
    [
        ("f g ~g", "f"),
        ("g ~g", "e"),
        ("f f ~g", "f f ~g"),
        ("f e g e ~g ~f", "e"),
        ("~f f", "~f f"),
        ("f g ~g ~f h", "h"),
    ],
)
def test_reduce_label_string(text, expected):
    assert format_label_string(reduce_label_string(labels(text))) == expected


@pytest.mark.parametrize(
    "text,expected",
    [
        ("f g ~g", PathClass.INCREASING),
        ("f f ~g", PathClass.FAILING),
        ("g ~g", PathClass.FLAT),
        ("e", PathClass.FLAT),
        ("g ~g f", PathClass.INCREASING),
        ("~f", PathClass.FAILING),
    ],
)
def test_classify_string(text, expected):
    assert classify_string(labels(text)) is expected


@pytest.mark.parametrize(
    "text,accepted",
    [
        ("f", True),
        ("f g ~g", True),
        ("g ~g f", True),
        ("f ~f", False),
        ("f f ~g", False),
        ("~f f", False),
        ("", False),
    ],
)
def test_pda_examples(text, accepted):
    assert pda_accepts(labels(text)) is accepted


def test_pda_table_shape():
    delta = build_pda([F, G])
    assert all(len(key) == 3 for key in delta)
    assert delta[("q0", pos(F), "Z0")][0] == "qF"
    assert delta[("qF", neg(G), "F:g/1")] == ("qF", None)
    assert ("q0", neg(F), "Z0") not in delta


def test_pda_agrees_with_classification_exhaustively():
    delta = build_pda([F, G])
    small = [pos(F), pos(G), neg(F), neg(G)]
    for length in range(0, 9):
        for word in itertools.product(small, repeat=length):
            increasing = classify_string(word) is PathClass.INCREASING
            assert pda_accepts(word, delta) is increasing, format_label_string(word)


def test_pda_agrees_with_classification_on_random_strings():
    rng = random.Random(3)
    delta = build_pda([F, G, H])
    pool = ALPHABET + [EPSILON]
    for _ in range(10_000):
        word = [rng.choice(pool) for _ in range(rng.randint(9, 30))]
        increasing = classify_string(word) is PathClass.INCREASING
        assert pda_accepts(word, delta) is increasing


def _reduce_in_random_order(word, rng):
    word = [label for label in word if not label.is_epsilon]
    while True:
        spots = [i for i in range(len(word) - 1) if cancels(word[i], word[i + 1])]
        if not spots:
            return tuple(word)
        i = rng.choice(spots)
        del word[i:i + 2]


def test_reduction_is_confluent():
    rng = random.Random(5)
    for _ in range(2_000):
        word = [rng.choice(ALPHABET) for _ in range(rng.randint(0, 14))]
        assert _reduce_in_random_order(word, rng) == reduce_label_string(word)
