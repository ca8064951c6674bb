"""Small shared numeric helpers."""
from __future__ import annotations

import math
from fractions import Fraction

# even-index Bernoulli numbers B_2, B_4, ..., B_40
_BERNOULLI_EVEN = (
    Fraction(1, 6),
    Fraction(-1, 30),
    Fraction(1, 42),
    Fraction(-1, 30),
    Fraction(5, 66),
    Fraction(-691, 2730),
    Fraction(7, 6),
    Fraction(-3617, 510),
    Fraction(43867, 798),
    Fraction(-174611, 330),
    Fraction(854513, 138),
    Fraction(-236364091, 2730),
    Fraction(8553103, 6),
    Fraction(-23749461029, 870),
    Fraction(8615841276005, 14322),
    Fraction(-7709321041217, 510),
    Fraction(2577687858367, 6),
    Fraction(-26315271553053477373, 1919190),
    Fraction(2929993913841559, 6),
    Fraction(-261082718496449122051, 13530),
)


def bernoulli_even(k: int) -> float:
    """B_{2k} as a float, 1 <= k <= 20."""
    return float(_BERNOULLI_EVEN[k - 1])


def log_power_tail(q: float, m: float) -> float:
    """int_m^inf x^{-q} log^2 x dx for q > 1."""
    p = q - 1.0
    ln = math.log(m)
    return m ** (-p) / p * (ln * ln + 2.0 * ln / p + 2.0 / (p * p))


def richardson(values, ratio: float = 2.0):
    """Extrapolate f(h), f(h/r), f(h/r^2), ... to h -> 0.

    Assumes an error expansion in successive integer powers of h; each
    column of the Neville table removes one power.
    """
    cur = list(values)
    if len(cur) < 2:
        return cur[0]
    power = 1
    while len(cur) > 1:
        f = ratio ** power
        cur = [(f * b - a) / (f - 1) for a, b in zip(cur, cur[1:])]
        power += 1
    return cur[0]
