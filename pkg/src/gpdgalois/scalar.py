"""Exact arithmetic in finite fields F_{p^k} and deterministic linear solving.

A scalar is a length-k coefficient tuple over F_p in the power basis of the
chosen modulus polynomial.  Every module downstream reduces its questions to
the operations here, so determinism (fixed pivot order, fixed enumeration
order) is part of the contract.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import (
    DegreeMismatch,
    ExponentOutOfRange,
    NonPrimeCharacteristic,
    ReducibleModulus,
)

Scalar = tuple[int, ...]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# Polynomials over F_p as coefficient lists, lowest degree first.

def _ptrim(cs):
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _pmul(p, a, b):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def _pmod(p, a, m):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and _ptrim(a):
        shift = len(a) - 1 - dm
        c = (a[-1] * inv_lead) % p
        for i, y in enumerate(m):
            a[shift + i] = (a[shift + i] - c * y) % p
        _ptrim(a)
    return a


def _monic_polys(p, degree):
    for tail in itertools.product(range(p), repeat=degree):
        yield list(tail) + [1]


class FieldSpec:
    """A finite field F_{p^k}; build through :func:`make_field`."""

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.modulus = modulus
        self.zero: Scalar = (0,) * k
        self.one: Scalar = (1,) + (0,) * (k - 1)
        self._elements: tuple[Scalar, ...] | None = None
        self._mul_cache: dict[tuple[Scalar, Scalar], Scalar] = {}
        self._inv_cache: dict[Scalar, Scalar] = {}

    @property
    def order(self) -> int:
        return self.p ** self.k

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"FieldSpec(p={self.p}, k={self.k})"

    def element(self, coeffs) -> Scalar:
        """Coerce an int or coefficient sequence to a reduced scalar."""
        if isinstance(coeffs, int):
            coeffs = [coeffs]
        cs = [c % self.p for c in coeffs]
        if len(cs) > self.k:
            if any(cs[self.k:]):
                raise DegreeMismatch(f"coefficient vector longer than k={self.k}")
            cs = cs[: self.k]
        cs += [0] * (self.k - len(cs))
        return tuple(cs)

    def elements(self) -> tuple[Scalar, ...]:
        """All p^k scalars; index n has base-p digits of n, lowest power first."""
        if self._elements is None:
            self._elements = tuple(
                tuple(n // self.p**i % self.p for i in range(self.k))
                for n in range(self.order)
            )
        return self._elements

    def index(self, x: Scalar) -> int:
        return sum(c * self.p**i for i, c in enumerate(x))

    def add(self, x: Scalar, y: Scalar) -> Scalar:
        return tuple((a + b) % self.p for a, b in zip(x, y))

    def sub(self, x: Scalar, y: Scalar) -> Scalar:
        return tuple((a - b) % self.p for a, b in zip(x, y))

    def neg(self, x: Scalar) -> Scalar:
        return tuple((-a) % self.p for a in x)

    def mul(self, x: Scalar, y: Scalar) -> Scalar:
        got = self._mul_cache.get((x, y))
        if got is not None:
            return got
        prod = _pmod(self.p, _pmul(self.p, list(x), list(y)), list(self.modulus))
        prod += [0] * (self.k - len(prod))
        out = tuple(prod)
        self._mul_cache[(x, y)] = out
        return out

    def scale(self, n: int, x: Scalar) -> Scalar:
        n %= self.p
        return tuple((n * a) % self.p for a in x)

    def power(self, x: Scalar, n: int) -> Scalar:
        out = self.one
        base = x
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def inv(self, x: Scalar) -> Scalar:
        if x == self.zero:
            raise ZeroDivisionError("inverse of zero")
        got = self._inv_cache.get(x)
        if got is None:
            got = self.power(x, self.order - 2)
            self._inv_cache[x] = got
        return got

    def div(self, x: Scalar, y: Scalar) -> Scalar:
        return self.mul(x, self.inv(y))

    def frobenius(self, x: Scalar, e: int) -> Scalar:
        if not 0 <= e < self.k:
            raise ExponentOutOfRange(f"exponent {e} outside [0, {self.k})")
        return self.power(x, self.p**e)

    def format(self, x: Scalar) -> str:
        if self.k == 1:
            return str(x[0])
        terms = []
        for i in range(self.k - 1, -1, -1):
            c = x[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                var = "t" if i == 1 else f"t^{i}"
                terms.append(var if c == 1 else f"{c}{var}")
        return "+".join(terms) if terms else "0"


def make_field(p: int, k: int = 1, modulus=None) -> FieldSpec:
    """Validate (p, k, modulus) and return a usable field.

    The modulus must be monic of degree k and irreducible over F_p; it is
    ignored (and may be omitted) when k = 1.
    """
    if not isinstance(p, int) or not _is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    if not isinstance(k, int) or k < 1:
        raise DegreeMismatch(f"extension degree must be >= 1, got {k}")
    if k == 1:
        return FieldSpec(p, 1, (0, 1))
    if modulus is None:
        raise DegreeMismatch("modulus required when k > 1")
    mod = [c % p for c in modulus]
    if len(mod) != k + 1:
        raise DegreeMismatch(f"modulus must have length k+1={k + 1}, got {len(mod)}")
    if mod[-1] != 1:
        raise DegreeMismatch("modulus must be monic")
    for d in range(1, k // 2 + 1):
        for cand in _monic_polys(p, d):
            if not _ptrim(_pmod(p, mod, cand)):
                raise ReducibleModulus(
                    f"modulus has factor of degree {d}", witness=tuple(cand)
                )
    return FieldSpec(p, k, tuple(mod))


def frobenius(field: FieldSpec, x: Scalar, e: int) -> Scalar:
    """x raised to the p^e power."""
    return field.frobenius(x, e)


@dataclass
class LinearSystem:
    """matrix (rows x cols of scalars) and right-hand side (length rows)."""

    matrix: list
    rhs: list

    def __post_init__(self):
        for row in self.matrix:
            if len(row) != len(self.matrix[0]):
                raise DegreeMismatch("ragged matrix")
        if len(self.rhs) != len(self.matrix):
            raise DegreeMismatch("rhs length differs from row count")


@dataclass
class LinearSolution:
    solution: list | None
    nullspace: list = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return self.solution is not None


def solve_linear(field_: FieldSpec, system: LinearSystem) -> LinearSolution:
    """Gaussian elimination with a fixed pivot rule: leftmost column first,
    smallest row index; free variables are set to zero in the particular
    solution and each contributes one standard nullspace vector.
    """
    F = field_
    mat = [list(row) for row in system.matrix]
    rhs = list(system.rhs)
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if mat[i][c] != F.zero:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        rhs[r], rhs[pivot_row] = rhs[pivot_row], rhs[r]
        inv = F.inv(mat[r][c])
        mat[r] = [F.mul(inv, v) for v in mat[r]]
        rhs[r] = F.mul(inv, rhs[r])
        for i in range(nrows):
            if i != r and mat[i][c] != F.zero:
                factor = mat[i][c]
                mat[i] = [F.sub(v, F.mul(factor, w)) for v, w in zip(mat[i], mat[r])]
                rhs[i] = F.sub(rhs[i], F.mul(factor, rhs[r]))
        pivots.append((r, c))
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if rhs[i] != F.zero:
            return LinearSolution(None, [])
    solution = [F.zero] * ncols
    for row, col in pivots:
        solution[col] = rhs[row]
    pivot_cols = {c for _, c in pivots}
    nullspace = []
    for c in range(ncols):
        if c in pivot_cols:
            continue
        vec = [F.zero] * ncols
        vec[c] = F.one
        for row, col in pivots:
            vec[col] = F.neg(mat[row][c])
        nullspace.append(vec)
    return LinearSolution(solution, nullspace)


# Prime-field span bookkeeping on flattened integer vectors.  Used for
# membership, coordinates and dimension counts everywhere downstream.

class FpSpan:
    """Echelonized span over F_p, remembering coordinates w.r.t. the
    vectors that were inserted (which the callers keep independent)."""

    def __init__(self, p: int):
        self.p = p
        self.rows: dict[int, tuple[tuple[int, ...], tuple[int, ...]]] = {}
        self.count = 0

    def _reduce(self, vec):
        vec = list(vec)
        combo = [0] * self.count
        for pivot in sorted(self.rows):
            if pivot < len(vec) and vec[pivot]:
                c = vec[pivot]
                row, rcombo = self.rows[pivot]
                for i, v in enumerate(row):
                    vec[i] = (vec[i] - c * v) % self.p
                for i, v in enumerate(rcombo):
                    combo[i] = (combo[i] - c * v) % self.p
        return vec, combo

    def insert(self, vec) -> bool:
        """Add vec to the span; True if it was independent."""
        red, combo = self._reduce(vec)
        pivot = next((i for i, v in enumerate(red) if v), None)
        if pivot is None:
            return False
        inv = pow(red[pivot], self.p - 2, self.p)
        red = tuple((inv * v) % self.p for v in red)
        rcombo = tuple((inv * v) % self.p for v in combo) + (inv % self.p,)
        self.rows = {pv: (row, rc + (0,)) for pv, (row, rc) in self.rows.items()}
        self.rows[pivot] = (red, rcombo)
        self.count += 1
        return True

    def contains(self, vec) -> bool:
        red, _ = self._reduce(vec)
        return not any(red)

    def coords(self, vec):
        """Coordinates of vec over the inserted independent vectors, or None."""
        red, combo = self._reduce(vec)
        if any(red):
            return None
        return tuple((-c) % self.p for c in combo)

    @property
    def dim(self) -> int:
        return len(self.rows)


def fp_basis_scalars(field_: FieldSpec) -> list[Scalar]:
    """The power basis 1, t, ..., t^{k-1} as scalars."""
    return [
        tuple(1 if j == m else 0 for j in range(field_.k)) for m in range(field_.k)
    ]


def flatten(scalars) -> tuple[int, ...]:
    """Concatenate scalar coefficient tuples into one F_p vector."""
    out = []
    for s in scalars:
        out.extend(s)
    return tuple(out)


def unflatten(field_: FieldSpec, flat) -> tuple[Scalar, ...]:
    k = field_.k
    return tuple(tuple(flat[i : i + k]) for i in range(0, len(flat), k))
