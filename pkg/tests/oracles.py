"""Independent brute-force oracles used to freeze expected test values.

These deliberately avoid the package's own code paths: raw image tuples,
repeated-pass closures and all-pairs scans only.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product


def compose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a[x] for x in b)


def invert(a: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def closure(degree: int, gens: list[tuple[int, ...]]) -> set[tuple[int, ...]]:
    """Fixed-point iteration: multiply all pairs until nothing new appears."""
    elems = {tuple(range(degree))} | set(gens)
    while True:
        new = {compose(a, b) for a in elems for b in elems} - elems
        if not new:
            return elems
        elems |= new


def conj_classes(elems: set[tuple[int, ...]]) -> list[set[tuple[int, ...]]]:
    """Partition by the all-pairs conjugation relation."""
    left = set(elems)
    out = []
    while left:
        g = next(iter(left))
        cls = {compose(compose(x, g), invert(x)) for x in elems}
        out.append(cls)
        left -= cls
    return out


def elem_order(a: tuple[int, ...]) -> int:
    ident = tuple(range(len(a)))
    x, n = a, 1
    while x != ident:
        x = compose(x, a)
        n += 1
    return n


def cyclic_subgroups(elems: set[tuple[int, ...]]) -> set[frozenset[tuple[int, ...]]]:
    out = set()
    for g in elems:
        sub = {tuple(range(len(g)))}
        x = g
        while x not in sub:
            sub.add(x)
            x = compose(x, g)
        out.add(frozenset(sub))
    return out


def subgroup_conj_classes(elems, subgroups):
    """Partition a set of subgroups by conjugacy inside the full element set."""
    left = set(subgroups)
    out = []
    while left:
        s = next(iter(left))
        cls = {frozenset(compose(compose(x, t), invert(x)) for t in s) for x in elems}
        out.append(cls)
        left -= cls
    return out


def orbits(elems, action, points: int) -> list[set[int]]:
    """Flood fill orbits of an action given as a callable (images, point) -> point."""
    left = set(range(points))
    out = []
    while left:
        p = next(iter(left))
        orb = {action(g, p) for g in elems}
        changed = True
        while changed:
            bigger = {action(g, q) for g in elems for q in orb}
            changed = not bigger <= orb
            orb |= bigger
        out.append(orb)
        left -= orb
    return out


def burnside(elems, action, points: int) -> Fraction:
    total = sum(sum(1 for p in range(points) if action(g, p) == p) for g in elems)
    return Fraction(total, len(elems))


def units_mod(m: int) -> list[int]:
    if m == 1:
        return [0]
    return [j for j in range(1, m) if math.gcd(j, m) == 1]


def poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_mod_cyclotomic_naive(coeffs: list[Fraction], e: int) -> list[Fraction]:
    """Reduce a polynomial in zeta_e using only zeta^e = 1 and the full
    power-sum relation, via linear algebra over the complex embedding check
    being avoided: instead reduce against the naive product formula for the
    cyclotomic polynomial computed by root counting."""
    phi = cyclotomic_poly_naive(e)
    coeffs = list(coeffs)
    d = len(phi) - 1
    while len(coeffs) > d:
        lead = coeffs.pop()
        if lead:
            for i in range(d):
                coeffs[len(coeffs) - d + i] -= lead * phi[i]
    while len(coeffs) < d:
        coeffs.append(Fraction(0))
    return coeffs


def cyclotomic_poly_naive(e: int) -> list[Fraction]:
    """Phi_e by dividing x^e - 1 by the product of all lower Phi_d."""
    if e == 1:
        return [Fraction(-1), Fraction(1)]
    num = [Fraction(0)] * (e + 1)
    num[0], num[e] = Fraction(-1), Fraction(1)
    den = [Fraction(1)]
    for d in range(1, e):
        if e % d == 0:
            den = poly_mul(den, cyclotomic_poly_naive(d))
    # exact polynomial division num / den
    out = [Fraction(0)] * (len(num) - len(den) + 1)
    rem = list(num)
    for i in range(len(out) - 1, -1, -1):
        c = rem[i + len(den) - 1] / den[-1]
        out[i] = c
        for j, dv in enumerate(den):
            rem[i + j] -= c * dv
    assert all(r == 0 for r in rem)
    return out


def perm_char_fixed_points(images: tuple[int, ...]) -> int:
    return sum(1 for i, x in enumerate(images) if i == x)


def all_maps(n: int, k: int):
    """Every total map {0..n-1} -> {0..k-1}."""
    return product(range(k), repeat=n)
