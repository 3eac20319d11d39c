import itertools

from hypothesis import strategies as st

from blockmoments.presentation import Letter, Word


def brute_force_trace(m, order):
    """Count sign sequences whose exponent sum is the identity, one tuple at a time."""
    count = 0
    for signs in itertools.product((1, -1), repeat=m):
        s = sum(signs)
        if (s == 0) if order is None else (s % order == 0):
            count += 1
    return count


GENERATORS = ("a", "b", "c")

letters = st.builds(Letter, st.sampled_from(GENERATORS), st.sampled_from((1, -1)))
words = st.lists(letters, max_size=64).map(lambda xs: Word(tuple(xs)))
