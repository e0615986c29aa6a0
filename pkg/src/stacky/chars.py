"""Character tables of finite groups and the representation ring.

Tables are computed by the classical prime-field method: class-algebra
structure constants, simultaneous eigenvectors over F_q with q = 1 mod exp(G)
and q > 2*sqrt(|G|), then lifting to exact cyclotomic values by inverse
discrete Fourier transform against a fixed element of order exp(G) in F_q.
Abelian groups take a direct fast path.  Every produced table is verified
against exact row orthogonality before it is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .cyclo import Cyclotomic
from .errors import GroupTooLargeError, NonIntegralConstantError, NotRationalError
from .perms import (
    DEFAULT_ELEMENT_CAP,
    ConjugacyClass,
    FiniteGroup,
    Perm,
    conjugacy_classes,
    reduce_generators,
)

ClassFunction = Sequence[Union[Cyclotomic, int, Fraction]]


@dataclass(frozen=True)
class CharacterTable:
    """Irreducible characters of a finite group, one row per character."""

    group: FiniteGroup
    classes: tuple[ConjugacyClass, ...]
    rows: tuple[tuple[Cyclotomic, ...], ...]
    degrees: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.rows)

    def value(self, row: int, class_index: int) -> Cyclotomic:
        return self.rows[row][class_index]


@dataclass(frozen=True)
class RepresentationRing:
    """Tensor-product structure constants over a character table.

    constants[i][j][k] is the multiplicity of the k-th irreducible inside
    the product of the i-th and j-th ones.
    """

    table: CharacterTable
    constants: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def rank(self) -> int:
        return self.table.rank


def character_table(G: FiniteGroup, *, cap: int = DEFAULT_ELEMENT_CAP) -> CharacterTable:
    """The full character table, rows canonically ordered (trivial row first,
    the rest by degree then by lexicographic value tuple)."""
    if G.order > cap:
        raise GroupTooLargeError(f"group order {G.order} exceeds cap {cap}")
    classes = conjugacy_classes(G)
    if G.is_abelian():
        raw_rows = _abelian_characters(G, classes)
    else:
        raw_rows = _prime_field_characters(G, classes)

    e = G.exponent()
    ident_idx = next(i for i, c in enumerate(classes) if c.order == 1)
    decorated = []
    for row in raw_rows:
        deg = row[ident_idx].rational_part()
        if deg.denominator != 1 or deg <= 0:
            raise RuntimeError(f"internal error: character degree {deg} is not a positive integer")
        decorated.append((int(deg), row))
    trivial = [row for deg, row in decorated if deg == 1 and all(v == 1 for v in row)]
    if len(trivial) != 1:
        raise RuntimeError("internal error: trivial character not found exactly once")
    rest = [(deg, row) for deg, row in decorated if row is not trivial[0]]
    rest.sort(key=lambda t: (t[0], tuple(v.sort_key(e) for v in t[1])))
    rows = (tuple(trivial[0]),) + tuple(tuple(row) for _, row in rest)
    degrees = (1,) + tuple(deg for deg, _ in rest)

    table = CharacterTable(G, classes, rows, degrees)
    _verify_table(table)
    return table


def inner_product(T: CharacterTable, phi: ClassFunction, psi: ClassFunction) -> Fraction:
    """(1/|G|) sum over classes of |class| * phi * conj(psi); must come out rational."""
    if len(phi) != len(T.classes) or len(psi) != len(T.classes):
        raise ValueError("class functions must be indexed by the table's classes")
    total = Cyclotomic.from_rational(0)
    for c, x, y in zip(T.classes, phi, psi):
        xv = x if isinstance(x, Cyclotomic) else Cyclotomic.from_rational(x)
        yv = y if isinstance(y, Cyclotomic) else Cyclotomic.from_rational(y)
        total = total + xv * yv.conjugate() * c.size
    total = total / T.group.order
    if not total.is_rational():
        raise NotRationalError(f"inner product {total} is not rational")
    return total.rational_part()


def rep_ring(T: CharacterTable) -> RepresentationRing:
    """Structure constants of the representation ring, fully verified."""
    r = T.rank
    constants = []
    for i in range(r):
        row_i = []
        for j in range(r):
            prod = tuple(T.rows[i][c] * T.rows[j][c] for c in range(len(T.classes)))
            coeffs = []
            for k in range(r):
                n = inner_product(T, prod, T.rows[k])
                if n.denominator != 1 or n < 0:
                    raise NonIntegralConstantError(
                        f"constant for ({i},{j},{k}) is {n}, not a nonnegative integer")
                coeffs.append(int(n))
            # pointwise identity chi_i * chi_j = sum_k n_k chi_k on every class
            for c in range(len(T.classes)):
                recon = Cyclotomic.from_rational(0)
                for k in range(r):
                    if coeffs[k]:
                        recon = recon + T.rows[k][c] * coeffs[k]
                if not recon == prod[c]:
                    raise NonIntegralConstantError(
                        f"product of rows {i},{j} does not re-expand on class {c}")
            row_i.append(tuple(coeffs))
        constants.append(tuple(row_i))
    return RepresentationRing(T, tuple(constants))


def _verify_table(T: CharacterTable) -> None:
    r = T.rank
    if r != len(T.classes):
        raise RuntimeError("internal error: row count differs from class count")
    if sum(d * d for d in T.degrees) != T.group.order:
        raise RuntimeError("internal error: degree squares do not sum to the group order")
    for i in range(r):
        for j in range(i, r):
            expect = Fraction(1 if i == j else 0)
            if inner_product(T, T.rows[i], T.rows[j]) != expect:
                raise RuntimeError(f"internal error: rows {i},{j} fail orthogonality")


# ---------------------------------------------------------------------------
# Abelian fast path: characters are homomorphisms into the exp(G)-th roots.

def _abelian_characters(G: FiniteGroup, classes) -> list[tuple[Cyclotomic, ...]]:
    e = G.exponent()
    gens = reduce_generators(G.elements, G.degree)
    orders = [g.order() for g in gens]
    index = {g: i for i, g in enumerate(G.elements)}

    # exponent vector of every element with respect to the reduced generators
    vecs: dict[Perm, tuple[int, ...]] = {G.identity: (0,) * len(gens)}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for j, g in enumerate(gens):
                y = x * g
                if y not in vecs:
                    v = list(vecs[x])
                    v[j] = (v[j] + 1) % orders[j]
                    vecs[y] = tuple(v)
                    nxt.append(y)
        frontier = nxt
    assert len(vecs) == G.order

    phases_of: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    for assignment in _mixed_radix(orders):
        phases = [(e // o) * t % e for o, t in zip(orders, assignment)]

        def s(x: Perm) -> int:
            return sum(v * p for v, p in zip(vecs[x], phases)) % e

        ok = True
        for x in G.elements:
            sx = s(x)
            for j, g in enumerate(gens):
                if s(x * g) != (sx + phases[j]) % e:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            values = tuple(s(x) for x in G.elements)
            if values not in seen:
                seen.add(values)
                phases_of.append(values)
    if len(phases_of) != G.order:
        raise RuntimeError("internal error: abelian character count mismatch")

    rows = []
    for values in phases_of:
        row = []
        for c in classes:
            g = c.representative
            sg = values[index[g]]
            m = g.order()
            assert sg % (e // m) == 0
            row.append(Cyclotomic.zeta(m, sg // (e // m)))
        rows.append(tuple(row))
    return rows


def _mixed_radix(orders: Sequence[int]):
    if not orders:
        yield ()
        return
    for head in range(orders[0]):
        for tail in _mixed_radix(orders[1:]):
            yield (head,) + tail


# ---------------------------------------------------------------------------
# Prime-field route for nonabelian groups.

def _prime_field_characters(G: FiniteGroup, classes) -> list[tuple[Cyclotomic, ...]]:
    r = len(classes)
    n = G.order
    e = G.exponent()
    reps = [c.representative for c in classes]
    sizes = [c.size for c in classes]
    class_of = {g: i for i, c in enumerate(classes) for g in c.members}
    inv_class = [class_of[rep.inverse()] for rep in reps]

    q = _choose_prime(e, n)
    theta = _element_of_order(q, e)

    # power map: class of reps[i]^j for j in 0..e-1
    power_class = []
    for rep in reps:
        row = []
        x = G.identity
        powers = []
        for _ in range(rep.order()):
            powers.append(class_of[x])
            x = x * rep
        for j in range(e):
            row.append(powers[j % rep.order()])
        power_class.append(row)

    # structure constants a[i][j][k] = #{x in C_i : x^-1 z_k in C_j}
    a = [[[0] * r for _ in range(r)] for _ in range(r)]
    for k, z in enumerate(reps):
        for i, cls in enumerate(classes):
            for x in cls.members:
                j = class_of[x.inverse() * z]
                a[i][j][k] += 1
    # mult-by-class-sum matrices acting on coefficient vectors: M_i[k][j] = a[i][j][k]
    mats = [[[a[i][j][k] % q for j in range(r)] for k in range(r)] for i in range(r)]

    spaces: list[list[list[int]]] = [[[1 if t == s else 0 for t in range(r)] for s in range(r)]]
    ident_idx = class_of[G.identity]
    for i in range(r):
        if i == ident_idx:
            continue
        if all(len(B) == 1 for B in spaces):
            break
        nxt: list[list[list[int]]] = []
        for B in spaces:
            if len(B) == 1:
                nxt.append(B)
                continue
            nxt.extend(_split_invariant_subspace(mats[i], B, q))
        spaces = nxt
    if len(spaces) != r or any(len(B) != 1 for B in spaces):
        raise RuntimeError("internal error: eigen splitting did not isolate all characters")

    rows = []
    for B in spaces:
        v = B[0]
        omega = []
        for i in range(r):
            w = _matvec(mats[i], v, q)
            t = next(t for t in range(r) if v[t] != 0)
            lam = w[t] * pow(v[t], -1, q) % q
            if any((lam * v[s] - w[s]) % q for s in range(r)):
                raise RuntimeError("internal error: joint eigenvector verification failed")
            omega.append(lam)

        denom = sum(omega[i] * omega[inv_class[i]] * pow(sizes[i], -1, q) for i in range(r)) % q
        d_sq = n % q * pow(denom, -1, q) % q
        deg = next((d for d in range(1, math.isqrt(n) + 1) if d * d % q == d_sq), None)
        if deg is None:
            raise RuntimeError("internal error: could not identify a character degree")
        chi_q = [deg * omega[i] % q * pow(sizes[i], -1, q) % q for i in range(r)]

        row = [_lift_value(chi_q, power_class[i], reps[i].order(), e, q, theta, deg)
               for i in range(r)]
        rows.append(tuple(row))
    return rows


def _lift_value(chi_q, powers, m, e, q, theta, deg) -> Cyclotomic:
    """Recover sum of m-th roots of unity from its mod-q character values."""
    e_inv = pow(e, -1, q)
    theta_inv = pow(theta, -1, q)
    mults = []
    for k in range(e):
        acc = 0
        for j in range(e):
            acc += chi_q[powers[j]] * pow(theta_inv, j * k % (q - 1), q)
        mk = acc % q * e_inv % q
        if mk > deg:
            raise RuntimeError(f"internal error: eigenvalue multiplicity {mk} exceeds degree {deg}")
        mults.append(mk)
    step = e // m
    if any(mults[k] for k in range(e) if k % step):
        raise RuntimeError("internal error: lifted value is not in the expected subfield")
    value = Cyclotomic.from_rational(0)
    for t in range(m):
        if mults[t * step]:
            value = value + Cyclotomic.zeta(m, t) * mults[t * step]
    return value


def _split_invariant_subspace(M, B, q) -> list[list[list[int]]]:
    """Split an M-invariant subspace (basis B) into eigenspaces of M over F_q."""
    d = len(B)
    imgs = [_matvec(M, b, q) for b in B]
    A = _coords_in_basis(B, imgs, q)  # d x d, columns are coordinates of images
    grouped: list[list[list[int]]] = []
    found = 0
    for lam in range(q):
        shifted = [[(A[u][t] - (lam if u == t else 0)) % q for t in range(d)] for u in range(d)]
        kernel = _nullspace(shifted, q)
        if not kernel:
            continue
        grouped.append([
            [sum(coord[s] * B[s][t] for s in range(d)) % q for t in range(len(B[0]))]
            for coord in kernel])
        found += len(kernel)
        if found == d:
            break
    if found != d:
        raise RuntimeError("internal error: invariant subspace is not diagonalizable")
    return grouped


def _matvec(M, v, q):
    return [sum(M[i][j] * v[j] for j in range(len(v))) % q for i in range(len(M))]


def _coords_in_basis(B, imgs, q):
    """Solve for each img as a combination of the basis vectors (consistent by invariance)."""
    d, n = len(B), len(B[0])
    aug = [[B[s][t] for s in range(d)] + [img[t] for img in imgs] for t in range(n)]
    pivots = _row_reduce(aug, d, q)
    if len(pivots) != d:
        raise RuntimeError("internal error: subspace basis is degenerate")
    A = [[0] * d for _ in range(d)]
    for row, col in enumerate(pivots):
        for j in range(d):
            A[col][j] = aug[row][d + j]
    # consistency: rows beyond the pivots must be zero in the augmented part
    for row in range(len(pivots), n):
        if any(aug[row][d + j] for j in range(d)):
            raise RuntimeError("internal error: subspace is not invariant")
    return A


def _row_reduce(rows, limit_cols, q):
    """In-place RREF over F_q on the first limit_cols columns; returns pivot columns."""
    pivots = []
    rank = 0
    for col in range(limit_cols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] % q), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], -1, q)
        rows[rank] = [x * inv % q for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % q:
                f = rows[i][col]
                rows[i] = [(x - f * y) % q for x, y in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    return pivots


def _nullspace(M, q):
    """Basis of the kernel of a square matrix over F_q."""
    d = len(M)
    rows = [list(r) for r in M]
    pivots = _row_reduce(rows, d, q)
    free = [c for c in range(d) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * d
        vec[fc] = 1
        for row, pc in enumerate(pivots):
            vec[pc] = (-rows[row][fc]) % q
        basis.append(vec)
    return basis


def _choose_prime(e: int, n: int) -> int:
    """Smallest prime q = 1 (mod e) with q > 2*sqrt(n)."""
    q = e + 1
    while True:
        if q * q > 4 * n and _is_prime(q):
            return q
        q += e if e > 1 else 1


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def _element_of_order(q: int, e: int) -> int:
    """A fixed element of multiplicative order e in F_q (q = 1 mod e)."""
    primes = _prime_factors(q - 1)
    g = next(g for g in range(2, q)
             if all(pow(g, (q - 1) // p, q) != 1 for p in primes))
    return pow(g, (q - 1) // e, q)


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out
