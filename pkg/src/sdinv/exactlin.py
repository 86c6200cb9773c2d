"""Exact integer linear algebra: Hermite and Smith normal forms, lattice
membership with checkable certificates, and invariant-factor structure of
finitely generated abelian groups presented as subquotients of lattices.

All arithmetic uses arbitrary-precision integers.  The only modular
arithmetic appears inside non-membership certificates, which are verified
independently of the code that produced them.

Conventions
-----------
* A :class:`Lattice` is the column span of its generator matrix inside the
  ambient ``Z^r``.
* The canonical representation of a lattice is the column-style Hermite
  form: pivots positive, pivot rows strictly increasing, and every entry in
  a pivot row lying in ``[0, pivot)``.  Two lattices are equal iff their
  canonical bases are identical, which is how every "generated by" claim in
  this package is decided.
* Smith normal form is computed with explicit transform accumulation so the
  decomposition itself is a certificate (``U * A * V == D``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from ._factor import smallest_prime_factor


class InputError(ValueError):
    """Bad user-supplied data (dimension mismatch, unknown name, parse error)."""


class ContainmentError(InputError):
    """A claimed sublattice generator is not a member of the superlattice."""


class InternalInconsistencyError(RuntimeError):
    """A structural invariant failed; indicates a broken preset or a bug."""


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class IntMatrix:
    """Immutable dense integer matrix, stored row-major."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        widths = {len(r) for r in self.entries}
        if len(widths) > 1:
            raise InputError("ragged matrix")

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        return cls(tuple(tuple(int(x) for x in row) for row in rows))

    @classmethod
    def from_columns(cls, cols) -> "IntMatrix":
        cols = [tuple(int(x) for x in c) for c in cols]
        if not cols:
            return cls(())
        return cls(tuple(zip(*cols)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(tuple((0,) * cols for _ in range(rows)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.entries)) if self.entries else ())

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise InputError("matrix shape mismatch in product")
        bt = other.transpose().entries
        return IntMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in bt)
                for row in self.entries
            )
        )

    def matvec(self, v) -> tuple[int, ...]:
        if self.cols != len(v):
            raise InputError("matrix/vector shape mismatch")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.entries)

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def det(m: IntMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise InputError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_lists()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def invert_unimodular(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a matrix with determinant +-1."""
    n = m.rows
    if n != m.cols:
        raise InputError("inverse of a non-square matrix")
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m.entries)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise InputError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    out = []
    for i in range(n):
        row = a[i][n:]
        if any(x.denominator != 1 for x in row):
            raise InputError("matrix is not unimodular")
        out.append(tuple(int(x) for x in row))
    return IntMatrix(tuple(out))


# ---------------------------------------------------------------------------
# Hermite normal form (row style; the lattice code uses it on transposes)


def row_hermite(rows) -> tuple[tuple[int, ...], ...]:
    """Canonical row Hermite form with zero rows stripped.

    Pivots are positive, pivot columns strictly increase down the matrix and
    entries above a pivot are reduced into ``[0, pivot)``.  The output is the
    unique such basis of the row span, so it doubles as an equality test.
    """
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return ()
    ncols = len(mat[0])
    top = 0
    for c in range(ncols):
        while True:
            pivots = [i for i in range(top, len(mat)) if mat[i][c]]
            if not pivots:
                break
            best = min(pivots, key=lambda i: (abs(mat[i][c]), i))
            mat[top], mat[best] = mat[best], mat[top]
            if mat[top][c] < 0:
                mat[top] = [-x for x in mat[top]]
            p = mat[top][c]
            dirty = False
            for i in range(top + 1, len(mat)):
                if mat[i][c]:
                    q = mat[i][c] // p
                    mat[i] = [x - q * y for x, y in zip(mat[i], mat[top])]
                    dirty = dirty or bool(mat[i][c])
            if not dirty:
                for i in range(top):
                    q = mat[i][c] // p
                    if q:
                        mat[i] = [x - q * y for x, y in zip(mat[i], mat[top])]
                top += 1
                break
    return tuple(tuple(r) for r in mat[:top] if any(r))


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    """``U * source * V == D`` with ``U``, ``V`` unimodular and ``D`` in
    Smith form (diagonal, nonnegative, divisibility chain, zeros trailing)."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    source: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(
            self.D.entries[i][i] for i in range(min(self.D.rows, self.D.cols))
        )

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d > 1)

    def verify(self) -> bool:
        if self.U.mul(self.source).mul(self.V).entries != self.D.entries:
            return False
        if abs(det(self.U)) != 1 or abs(det(self.V)) != 1:
            return False
        diag = self.diagonal
        for i in range(self.D.rows):
            for j in range(self.D.cols):
                if i != j and self.D.entries[i][j]:
                    return False
        for i in range(len(diag) - 1):
            if diag[i] < 0 or diag[i + 1] < 0:
                return False
            if diag[i] == 0 and diag[i + 1] != 0:
                return False
            if diag[i] and diag[i + 1] % diag[i]:
                return False
        return True


def smith_normal_form(m: IntMatrix) -> SmithDecomposition:
    nr, nc = m.rows, m.cols
    a = m.to_lists()
    u = IntMatrix.identity(nr).to_lists()
    v = IntMatrix.identity(nc).to_lists()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, q):
        # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def add_col(i, j, q):
        # col_i -= q * col_j
        for row in a:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    def reduce_at(t):
        """Clear row ``t`` and column ``t`` outside the pivot position."""
        while True:
            cand = [
                (abs(a[i][j]), i, j)
                for i in range(t, nr)
                for j in range(t, nc)
                if a[i][j]
            ]
            if not cand:
                return False
            _, pi, pj = min(cand)
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = a[t][t]
            clean = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(i, t, a[i][t] // p)
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(j, t, a[t][j] // p)
                    clean = clean and a[t][j] == 0
            if clean:
                return True

    k = min(nr, nc)
    t = 0
    while t < k and reduce_at(t):
        t += 1
    rank = t

    def fix_block(i):
        """Local Smith step on the 2x2 block {i, i+1} after a chain fix.

        Rows and columns i, i+1 vanish outside the block, so these
        operations cannot disturb the rest of the diagonal.  The block ends
        as diag(gcd, lcm) up to sign.
        """
        while a[i][i + 1] or a[i + 1][i]:
            entries = [
                (abs(a[r][c]), r, c)
                for r in (i, i + 1)
                for c in (i, i + 1)
                if a[r][c]
            ]
            _, r, c = min(entries)
            if r != i:
                swap_rows(i, r)
            if c != i:
                swap_cols(i, c)
            p = a[i][i]
            if a[i + 1][i]:
                add_row(i + 1, i, a[i + 1][i] // p)
            if a[i][i + 1]:
                add_col(i + 1, i, a[i][i + 1] // p)

    # Enforce the divisibility chain d_i | d_{i+1}.
    changed = True
    while changed:
        changed = False
        for i in range(rank - 1):
            di, dj = a[i][i], a[i + 1][i + 1]
            if di and dj % di:
                add_col(i, i + 1, -1)  # col_i += col_{i+1}
                fix_block(i)
                changed = True

    for i in range(rank):
        if a[i][i] < 0:
            negate_row(i)

    dec = SmithDecomposition(
        U=IntMatrix.from_rows(u),
        D=IntMatrix.from_rows(a),
        V=IntMatrix.from_rows(v),
        source=m,
    )
    if not dec.verify():
        raise InternalInconsistencyError("smith normal form failed self-check")
    return dec


def kernel_basis(m: IntMatrix) -> list[tuple[int, ...]]:
    """Basis of the saturated integer kernel ``{x : m @ x == 0}``."""
    dec = smith_normal_form(m)
    out = []
    for j in range(m.cols):
        dj = dec.D.entries[j][j] if j < m.rows else 0
        if dj == 0:
            out.append(dec.V.column(j))
    return out


# ---------------------------------------------------------------------------
# lattices


@dataclass(frozen=True)
class Lattice:
    """Column span of ``generators`` inside ``Z^ambient_rank``."""

    ambient_rank: int
    generators: IntMatrix

    def __post_init__(self) -> None:
        if self.generators.cols and self.generators.rows != self.ambient_rank:
            raise InputError("generator length does not match ambient rank")

    @classmethod
    def from_columns(cls, ambient_rank: int, cols) -> "Lattice":
        cols = [tuple(c) for c in cols]
        for c in cols:
            if len(c) != ambient_rank:
                raise InputError("generator length does not match ambient rank")
        if not cols:
            return cls(ambient_rank, IntMatrix(tuple(() for _ in range(ambient_rank))))
        return cls(ambient_rank, IntMatrix.from_columns(cols))

    @classmethod
    def standard(cls, ambient_rank: int) -> "Lattice":
        return cls(ambient_rank, IntMatrix.identity(ambient_rank))

    @classmethod
    def zero(cls, ambient_rank: int) -> "Lattice":
        return cls.from_columns(ambient_rank, [])

    @cached_property
    def basis(self) -> IntMatrix:
        """Canonical Hermite basis, columns."""
        rows = row_hermite(self.generators.columns())
        return IntMatrix.from_columns(list(rows)) if rows else IntMatrix(
            tuple(() for _ in range(self.ambient_rank))
        )

    @property
    def rank(self) -> int:
        return self.basis.cols

    def canonical(self) -> "Lattice":
        return Lattice(self.ambient_rank, self.basis)

    def same_lattice(self, other: "Lattice") -> bool:
        return (
            self.ambient_rank == other.ambient_rank
            and self.basis.entries == other.basis.entries
        )

    @cached_property
    def _basis_smith(self) -> SmithDecomposition:
        return smith_normal_form(self.basis)

    @cached_property
    def _generator_smith(self) -> SmithDecomposition:
        return smith_normal_form(self.generators)

    def membership(self, v) -> "MembershipResult":
        return lattice_membership(v, self)

    def contains(self, v) -> bool:
        return self.membership(v).member

    def basis_columns(self) -> list[tuple[int, ...]]:
        return self.basis.columns()


@dataclass(frozen=True)
class NonMembershipCertificate:
    """Witness that a vector is outside a lattice.

    ``kind == "rank"``: ``functional @ g == 0`` for every generator while
    ``functional @ v != 0``.  ``kind == "modular"``: the same pairing is
    ``0 mod prime**power`` on the lattice but not on ``v``.
    """

    kind: str
    functional: tuple[int, ...]
    prime: int | None = None
    power: int | None = None

    def check(self, v, lattice: Lattice) -> bool:
        pair = lambda w: sum(a * b for a, b in zip(self.functional, w))
        if self.kind == "rank":
            return all(pair(g) == 0 for g in lattice.generators.columns()) and pair(v) != 0
        mod = self.prime ** self.power
        if pair(v) % mod == 0:
            return False
        return all(pair(g) % mod == 0 for g in lattice.generators.columns())


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    coordinates: tuple[int, ...] | None = None
    certificate: NonMembershipCertificate | None = None

    def check(self, v, lattice: Lattice) -> bool:
        if self.member:
            rebuilt = lattice.generators.matvec(self.coordinates)
            return rebuilt == tuple(v)
        return self.certificate.check(v, lattice)


def lattice_membership(v, lattice: Lattice) -> MembershipResult:
    """Decide ``v in lattice`` with an independently checkable certificate.

    YES answers come with integer coordinates in the *generator* matrix; NO
    answers carry either a rank obstruction or a prime-power congruence that
    every lattice element satisfies and ``v`` violates.
    """
    v = tuple(int(x) for x in v)
    if len(v) != lattice.ambient_rank:
        raise InputError(
            f"vector has length {len(v)}, ambient rank is {lattice.ambient_rank}"
        )
    basis = lattice.basis
    if basis.cols == 0:
        if any(v):
            first = next(i for i, x in enumerate(v) if x)
            unit = tuple(int(i == first) for i in range(len(v)))
            return MembershipResult(
                False, certificate=NonMembershipCertificate("rank", unit)
            )
        return MembershipResult(True, coordinates=(0,) * lattice.generators.cols)

    dec = lattice._basis_smith
    w = dec.U.matvec(v)
    k = basis.cols
    coords = [0] * k
    for i in range(basis.rows):
        d = dec.D.entries[i][i] if i < k else 0
        if d == 0:
            if w[i] != 0:
                return MembershipResult(
                    False,
                    certificate=NonMembershipCertificate("rank", dec.U.row(i)),
                )
            continue
        if w[i] % d:
            t = d // math.gcd(d, w[i])
            p = smallest_prime_factor(t)
            e = 0
            dd = d
            while dd % p == 0:
                dd //= p
                e += 1
            return MembershipResult(
                False,
                certificate=NonMembershipCertificate("modular", dec.U.row(i), p, e),
            )
        coords[i] = w[i] // d
    basis_coords = dec.V.matvec(coords)
    if basis.matvec(basis_coords) != v:
        raise InternalInconsistencyError("membership solve failed to reconstruct")
    gen_coords = _coords_in_generators(lattice, basis_coords)
    return MembershipResult(True, coordinates=gen_coords)


def _coords_in_generators(lattice: Lattice, basis_coords) -> tuple[int, ...]:
    """Rewrite coordinates w.r.t. the canonical basis as generator coordinates."""
    gens = lattice.generators
    if gens.entries == lattice.basis.entries:
        return tuple(basis_coords)
    target = lattice.basis.matvec(basis_coords)
    # Solve gens @ x = target; the generator matrix spans the same lattice,
    # so a solution exists.  Reuse the Smith machinery on the generators.
    dec = lattice._generator_smith
    w = dec.U.matvec(target)
    x = [0] * gens.cols
    for i in range(gens.rows):
        d = dec.D.entries[i][i] if i < gens.cols else 0
        if d == 0:
            if w[i] != 0:
                raise InternalInconsistencyError("generator solve lost the target")
            continue
        if w[i] % d:
            raise InternalInconsistencyError("generator solve lost the target")
        x[i] = w[i] // d
    coords = dec.V.matvec(x)
    if gens.matvec(coords) != tuple(target):
        raise InternalInconsistencyError("generator coordinates failed to rebuild")
    return tuple(coords)


# ---------------------------------------------------------------------------
# finitely generated abelian groups as subquotients


@dataclass(frozen=True)
class FinAbelianGroup:
    free_rank: int
    invariant_factors: tuple[int, ...]

    def __post_init__(self) -> None:
        for i, d in enumerate(self.invariant_factors):
            if d < 2:
                raise InputError("invariant factors must be >= 2")
            if i and d % self.invariant_factors[i - 1]:
                raise InputError("invariant factors must form a divisibility chain")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def order(self) -> int | None:
        """Group order, or None for infinite groups."""
        if self.free_rank:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def label(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " + ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.label()

    @classmethod
    def trivial(cls) -> "FinAbelianGroup":
        return cls(0, ())

    @classmethod
    def cyclic(cls, n: int) -> "FinAbelianGroup":
        return cls(0, (n,)) if n > 1 else cls.trivial()


@dataclass(frozen=True)
class TorsionWitness:
    """An element of the superlattice whose class has the stated exact order."""

    vector: tuple[int, ...]
    order: int
    # evidence: order * vector lies in the sublattice ...
    multiple_coordinates: tuple[int, ...]
    # ... and (order/p) * vector does not, for each prime p | order.
    proper_certificates: tuple[tuple[int, NonMembershipCertificate], ...]

    def check(self, sub: Lattice) -> bool:
        scaled = tuple(self.order * x for x in self.vector)
        if sub.generators.matvec(self.multiple_coordinates) != scaled:
            return False
        for p, cert in self.proper_certificates:
            frac = tuple((self.order // p) * x for x in self.vector)
            if not cert.check(frac, sub):
                return False
        return True


@dataclass(frozen=True)
class SubquotientData:
    """Full presentation of ``sup/sub``: the relation matrix of the sublattice
    in the canonical basis of the superlattice plus its Smith decomposition."""

    sub: Lattice
    sup: Lattice
    relation: IntMatrix
    relation_coords: tuple[tuple[int, ...], ...]
    smith: SmithDecomposition
    group: FinAbelianGroup
    torsion: FinAbelianGroup
    witnesses: tuple[TorsionWitness, ...]


def _relation_matrix(sub: Lattice, sup: Lattice) -> tuple[IntMatrix, list, Lattice]:
    if sub.ambient_rank != sup.ambient_rank:
        raise InputError("sub and sup live in different ambient ranks")
    sup_basis = sup.canonical()
    for idx, g in enumerate(sub.generators.columns()):
        if not sup_basis.contains(g):
            raise ContainmentError(
                f"generator {idx} of the sublattice is outside the superlattice"
            )
    # Work with the canonical basis of the sublattice from here on; it spans
    # the same group and keeps the relation matrix small.
    sub_c = sub.canonical()
    cols = [sup_basis.membership(g).coordinates for g in sub_c.generators.columns()]
    k = sup.rank
    mat = IntMatrix.from_columns(cols) if cols else IntMatrix(tuple(() for _ in range(k)))
    return mat, cols, sub_c


def subquotient_presentation(sub: Lattice, sup: Lattice) -> SubquotientData:
    relation, cols, sub = _relation_matrix(sub, sup)
    k = sup.rank
    dec = smith_normal_form(relation)
    factors = dec.invariant_factors()
    free_rank = k - dec.rank
    group = FinAbelianGroup(free_rank, factors)
    torsion = FinAbelianGroup(0, factors)

    witnesses = []
    if factors:
        uinv = invert_unimodular(dec.U)
        sup_basis = sup.basis
        diag = dec.diagonal
        for i, d in enumerate(diag):
            if d <= 1:
                continue
            vec = sup_basis.matvec(uinv.column(i))
            scaled = tuple(d * x for x in vec)
            yes = lattice_membership(scaled, sub)
            if not yes.member:
                raise InternalInconsistencyError("torsion witness failed to certify")
            proper = []
            seen = set()
            t = d
            while t > 1:
                p = smallest_prime_factor(t)
                while t % p == 0:
                    t //= p
                if p in seen:
                    continue
                seen.add(p)
                frac = tuple((d // p) * x for x in vec)
                res = lattice_membership(frac, sub)
                if res.member:
                    raise InternalInconsistencyError(
                        "torsion witness has smaller order than claimed"
                    )
                proper.append((p, res.certificate))
            witnesses.append(
                TorsionWitness(vec, d, yes.coordinates, tuple(proper))
            )

    return SubquotientData(
        sub=sub,
        sup=sup,
        relation=relation,
        relation_coords=tuple(tuple(c) for c in cols),
        smith=dec,
        group=group,
        torsion=torsion,
        witnesses=tuple(witnesses),
    )


def subquotient_structure(sub: Lattice, sup: Lattice) -> FinAbelianGroup:
    """Isomorphism type of ``sup/sub`` (requires ``sub`` contained in ``sup``)."""
    return subquotient_presentation(sub, sup).group


def saturation_torsion(sub: Lattice, sup: Lattice):
    """Torsion subgroup of ``sup/sub`` with one explicit witness per factor."""
    data = subquotient_presentation(sub, sup)
    return data.torsion, list(data.witnesses)


def lattice_index(sub: Lattice, sup: Lattice) -> int | None:
    """``[sup : sub]`` when finite, None when the ranks differ."""
    data = subquotient_presentation(sub, sup)
    if data.group.free_rank:
        return None
    out = 1
    for d in data.smith.diagonal:
        out *= d
    return out
