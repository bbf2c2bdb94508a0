"""Sparse integer chains and cochains as dicts from hashable keys to ints.

Zero coefficients are never stored, so two equal chains compare equal as dicts.
"""


def add_into(acc, key, coeff):
    """Accumulate coeff onto acc[key], dropping the entry when it cancels."""
    if coeff == 0:
        return
    c = acc.get(key, 0) + coeff
    if c:
        acc[key] = c
    else:
        del acc[key]


def combine(*chains):
    """Sum of several sparse chains."""
    out = {}
    for ch in chains:
        for k, c in ch.items():
            add_into(out, k, c)
    return out


def scale(chain, s):
    if s == 0:
        return {}
    return {k: s * c for k, c in chain.items()}


def diff(a, b):
    out = dict(a)
    for k, c in b.items():
        add_into(out, k, -c)
    return out


def pair(cochain, chain):
    """Evaluate a cochain against a chain: sum of products over shared keys."""
    if len(cochain) > len(chain):
        cochain, chain = chain, cochain
    return sum(c * chain.get(k, 0) for k, c in cochain.items())


def is_zero(chain):
    return not chain
