"""Words in the generators of a marked group.

A word is a tuple of nonzero integers: ``k`` stands for generator ``k``
(1-based) and ``-k`` for its inverse, the same encoding the JSON files use.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence

Word = tuple[int, ...]


def free_reduce(word: Iterable[int]) -> Word:
    out: list[int] = []
    for x in word:
        if x == 0:
            raise ValueError("0 is not a generator letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def multiply(*words: Sequence[int]) -> Word:
    return free_reduce(x for w in words for x in w)


def conjugate(word: Sequence[int], by: Sequence[int]) -> Word:
    """``by * word * by^-1``."""
    return multiply(by, word, inverse(by))


def cyclic_reduce(word: Sequence[int]) -> Word:
    w = free_reduce(word)
    while len(w) > 1 and w[0] == -w[-1]:
        w = w[1:-1]
    return w


def canonical_cyclic(word: Sequence[int], unoriented: bool = True) -> Word:
    """Least rotation of the cyclically reduced word (and of its inverse)."""
    w = cyclic_reduce(word)
    if not w:
        return w
    forms = [w, inverse(w)] if unoriented else [w]
    return min(f[i:] + f[:i] for f in forms for i in range(len(f)))


def root(word: Sequence[int]) -> tuple[Word, int]:
    """Return ``(u, k)`` with the cyclically reduced word equal to ``u^k``, k maximal."""
    w = cyclic_reduce(word)
    n = len(w)
    for p in range(1, n + 1):
        if n % p == 0 and w == w[:p] * (n // p):
            return w[:p], n // p
    return w, 1


def is_primitive_word(word: Sequence[int]) -> bool:
    return root(word)[1] == 1


def reduced_words(n_generators: int, max_length: int) -> Iterator[Word]:
    """All freely reduced words of length 1..max_length, shortlex order."""
    letters = [x for k in range(1, n_generators + 1) for x in (k, -k)]
    layer: list[Word] = [()]
    for _ in range(max_length):
        nxt = []
        for w in layer:
            for x in letters:
                if not w or w[-1] != -x:
                    nxt.append(w + (x,))
        yield from nxt
        layer = nxt


def evaluate(generators, word: Sequence[int]):
    from .moebius import ProjectiveMatrix

    out = ProjectiveMatrix.identity()
    for x in word:
        g = generators[abs(x) - 1]
        out = out @ (g if x > 0 else g.inverse())
    return out


def shortlex_key(word: Sequence[int]):
    return (len(word), tuple((abs(x), x < 0) for x in word))
