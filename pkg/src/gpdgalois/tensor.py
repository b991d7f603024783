"""Base-algebra linear algebra: K-blocks, ranks, blockwise tensor products.

The base algebra K (the invariants) is a product of finite fields; its
primitive idempotents cut every K-module into blocks, each a vector space
over one field.  Ranks, tensor products and separability questions are all
settled per block by exact prime-field computation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .action import Subalgebra, span_elements
from .errors import KBlockNotField, NotAModule, SupportViolation
from .scalar import FpSpan, Scalar, make_field


class KBlock:
    """One primitive idempotent u of K together with the field K·u.

    `afield` is an abstract copy of K·u (built on the minimal polynomial of
    the chosen generator kappa over F_p), with coordinate maps both ways.
    """

    def __init__(self, space, u, fp_basis, kappa, afield, kappa_pows):
        self.space = space
        self.u = u
        self.fp_basis = tuple(fp_basis)
        self.kappa = kappa
        self.afield = afield
        self.kappa_pows = tuple(kappa_pows)
        self._decomp = FpSpan(space.field.p)
        for pw in self.kappa_pows:
            if not self._decomp.insert(space.flat(pw)):
                raise KBlockNotField("generator powers are dependent")

    @property
    def degree(self) -> int:
        return self.afield.k

    def to_abstract(self, c) -> Scalar:
        coords = self._decomp.coords(self.space.flat(c))
        if coords is None:
            raise SupportViolation("element outside K times its idempotent")
        return tuple(coords)

    def from_abstract(self, space, s: Scalar) -> tuple:
        return space.int_combine(s, self.kappa_pows)


def kblocks(K: Subalgebra) -> list[KBlock]:
    """The primitive idempotents of K with their field data, in the order
    the idempotents first appear in K's element enumeration."""
    space = K.space
    idems = [x for x in K.elements if x != space.zero() and space.mul(x, x) == x]
    primitive = []
    for u in idems:
        if not any(w != u and space.mul(u, w) == w for w in idems):
            primitive.append(u)
    total = space.zero()
    for u in primitive:
        for w in primitive:
            if w != u and space.mul(u, w) != space.zero():
                raise KBlockNotField("primitive idempotents not orthogonal")
        total = space.add(total, u)
    if total != space.one():
        raise KBlockNotField("primitive idempotents do not sum to one")

    out = []
    for u in primitive:
        span = FpSpan(space.field.p)
        fp_basis = []
        for b in K.basis:
            v = space.mul(b, u)
            if span.insert(space.flat(v)):
                fp_basis.append(v)
        d = len(fp_basis)
        kappa = minpoly_coords = None
        for cand in span_elements(space, fp_basis):
            if cand == space.zero():
                continue
            deg_span = FpSpan(space.field.p)
            power, degree = u, 0
            while deg_span.insert(space.flat(power)):
                degree += 1
                power = space.mul(power, cand)
            if degree == d:
                kappa = cand
                minpoly_coords = deg_span.coords(space.flat(power))
                break
        if kappa is None:
            raise KBlockNotField("no field generator found; K block is not a field")
        p = space.field.p
        if d == 1:
            afield = make_field(p, 1)
        else:
            modulus = tuple((-c) % p for c in minpoly_coords) + (1,)
            afield = make_field(p, d, modulus)
        kappa_pows = [u]
        for _ in range(d - 1):
            kappa_pows.append(space.mul(kappa_pows[-1], kappa))
        out.append(KBlock(space, u, fp_basis, kappa, afield, kappa_pows))
    return out


class BlockModuleBasis:
    """A K·u-basis of M·u for a K-module M inside some product space,
    with exact decomposition of arbitrary elements of M·u."""

    def __init__(self, space, kblock: KBlock, module_basis):
        self.space = space
        self.kblock = kblock
        fp_span = FpSpan(space.field.p)
        fp_vecs = []
        for b in module_basis:
            v = space.k_scale(kblock.u, b)
            if fp_span.insert(space.flat(v)):
                fp_vecs.append(v)
        ku_span = FpSpan(space.field.p)
        self.basis = []
        self._decomp = FpSpan(space.field.p)
        for v in fp_vecs:
            if ku_span.contains(space.flat(v)):
                continue
            self.basis.append(v)
            for pw in kblock.kappa_pows:
                vv = space.k_scale(pw, v)
                if not ku_span.insert(space.flat(vv)):
                    raise NotAModule("block not free over its base field")
                if not fp_span.contains(space.flat(vv)):
                    raise NotAModule("module not closed under base multiplication")
                self._decomp.insert(space.flat(vv))
        if len(self.basis) * kblock.degree != len(fp_vecs):
            raise NotAModule("block dimension not divisible by the field degree")

    @property
    def rank(self) -> int:
        return len(self.basis)

    def decompose(self, z) -> tuple[Scalar, ...]:
        """K·u-coordinates of z over the basis, as abstract scalars."""
        coords = self._decomp.coords(self.space.flat(z))
        if coords is None:
            raise NotAModule("element outside the block span")
        d = self.kblock.degree
        return tuple(
            tuple(coords[i * d : (i + 1) * d]) for i in range(len(self.basis))
        )


@dataclass
class RankProfile:
    """Per-K-block dimension of a module, with constancy and faithfulness."""

    ranks: tuple
    constant: bool
    faithful: bool

    @property
    def value(self) -> int | None:
        return self.ranks[0] if self.constant and self.ranks else None


def rank_profile(T, K: Subalgebra, blocks=None) -> RankProfile:
    """dim over K·u of T·u for every primitive idempotent u of K.

    Raises NotAModule when T is not closed under multiplication by K.
    """
    space = T.space
    for c in K.basis:
        for b in T.basis:
            if not T.contains(space.k_scale(c, b)):
                raise NotAModule("module not closed under base multiplication")
    blocks = blocks if blocks is not None else kblocks(K)
    ranks = tuple(
        BlockModuleBasis(space, blk, T.basis).rank for blk in blocks
    )
    constant = len(set(ranks)) <= 1
    return RankProfile(ranks, constant, all(r >= 1 for r in ranks))


class TensorOverK:
    """M tensor N over K, realized blockwise.

    Elements are prime-field coordinate vectors over the basis
    kappa^m (m_i tensor n_j), enumerated block-major.
    """

    def __init__(self, space_m, space_n, K: Subalgebra, m_basis, n_basis, blocks=None):
        self.space_m = space_m
        self.space_n = space_n
        self.p = K.space.field.p
        self.blocks = blocks if blocks is not None else kblocks(K)
        self.m_parts = [BlockModuleBasis(space_m, blk, m_basis) for blk in self.blocks]
        self.n_parts = [BlockModuleBasis(space_n, blk, n_basis) for blk in self.blocks]
        self.layout = []
        off = 0
        for bi, blk in enumerate(self.blocks):
            for i in range(self.m_parts[bi].rank):
                for j in range(self.n_parts[bi].rank):
                    self.layout.append(((bi, i, j), off, blk.degree))
                    off += blk.degree
        self.dim = off

    def zero(self) -> tuple:
        return (0,) * self.dim

    def add(self, a, b) -> tuple:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def pure(self, x, y) -> tuple:
        """Coordinates of the pure tensor (x in M, y in N)."""
        coords = [0] * self.dim
        per_block_m = [
            part.decompose(self.space_m.k_scale(blk.u, x))
            for part, blk in zip(self.m_parts, self.blocks)
        ]
        per_block_n = [
            part.decompose(self.space_n.k_scale(blk.u, y))
            for part, blk in zip(self.n_parts, self.blocks)
        ]
        for (bi, i, j), off, d in self.layout:
            prod = self.blocks[bi].afield.mul(per_block_m[bi][i], per_block_n[bi][j])
            for m in range(d):
                coords[off + m] = (coords[off + m] + prod[m]) % self.p
        return tuple(coords)

    def from_pairs(self, pairs) -> tuple:
        out = self.zero()
        for x, y in pairs:
            out = self.add(out, self.pure(x, y))
        return out

    def basis_vectors(self):
        """(coords, x, y) for each basis tensor kappa^m (m_i tensor n_j)."""
        for (bi, i, j), off, d in self.layout:
            blk = self.blocks[bi]
            for m in range(d):
                coords = [0] * self.dim
                coords[off + m] = 1
                x = self.space_m.k_scale(blk.kappa_pows[m], self.m_parts[bi].basis[i])
                y = self.n_parts[bi].basis[j]
                yield tuple(coords), x, y
