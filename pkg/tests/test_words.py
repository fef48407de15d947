import itertools

from hyperspectra import words as W


def test_free_reduce_and_inverse():
    assert W.free_reduce([1, 2, -2, -1, 3]) == (3,)
    assert W.inverse((1, -2, 3)) == (-3, 2, -1)
    assert W.multiply((1, 2), W.inverse((1, 2))) == ()


def test_cyclic_and_canonical():
    assert W.cyclic_reduce((1, 2, 1, -1)) == (1, 2)
    assert W.cyclic_reduce((-1, 2, 1)) == (2,)
    w = (1, 2, -1, 2)
    forms = {W.canonical_cyclic(w[i:] + w[:i]) for i in range(4)}
    forms |= {W.canonical_cyclic(W.inverse(w))}
    assert len(forms) == 1


def test_roots():
    assert W.root((1, 2, 1, 2, 1, 2)) == ((1, 2), 3)
    assert W.is_primitive_word((1, 2, 2))
    assert not W.is_primitive_word((1, -2, 1, -2))


def test_reduced_word_count():
    # a free group of rank r has 2r (2r-1)^(n-1) reduced words of length n
    words = list(W.reduced_words(2, 4))
    for n in range(1, 5):
        assert sum(1 for w in words if len(w) == n) == 4 * 3 ** (n - 1)
    assert all(W.free_reduce(w) == w for w in words)


def test_shortlex_is_total():
    ws = list(W.reduced_words(2, 3))
    keys = [W.shortlex_key(w) for w in ws]
    assert len(set(keys)) == len(keys)
    assert sorted(ws, key=W.shortlex_key)[0] in {(1,), (-1,), (2,), (-2,)}
