"""Normalized reduced chains over GF(2) and their homology.

The normalized chain complex of a pointed simplicial set has one generator
per nondegenerate non-basepoint simplex; the boundary is the alternating
face sum, where signs vanish mod 2 and faces whose canonical form is
degenerate or the basepoint contribute nothing.  Everything downstream is
sparse linear algebra over the two-element field: columns are sets of row
indices and row operations are symmetric differences, so results are exact
and there are no tolerances anywhere.
"""

from __future__ import annotations

from typing import Any, Iterable, Mapping, Optional, Sequence

from .simplicial import (
    PointedSubset,
    SimplexRef,
    SimplicialMap,
    SimplicialSet,
    TruncationError,
    inclusion_map,
)


class UncertifiedRangeError(ValueError):
    """A Betti number was requested beyond the certified range of a table."""


# ---------------------------------------------------------------------------
# Sparse GF(2) matrices.
# ---------------------------------------------------------------------------

class GF2SparseMatrix:
    """A sparse matrix over GF(2): sorted row-index tuples per column."""

    __slots__ = ("nrows", "ncols", "cols", "_rank")

    def __init__(self, nrows: int, ncols: int, cols: Sequence[Iterable[int]]):
        if len(cols) != ncols:
            raise ValueError("column count mismatch")
        self.nrows = nrows
        self.ncols = ncols
        packed = []
        for col in cols:
            rows = tuple(sorted(col))
            if rows and not (0 <= rows[0] and rows[-1] < nrows):
                raise ValueError("row index out of range")
            if any(a == b for a, b in zip(rows, rows[1:])):
                raise ValueError("duplicate entry in a column")
            packed.append(rows)
        self.cols = tuple(packed)
        self._rank: Optional[int] = None

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "GF2SparseMatrix":
        return cls(nrows, ncols, [()] * ncols)

    @classmethod
    def identity(cls, n: int) -> "GF2SparseMatrix":
        return cls(n, n, [(i,) for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def is_zero(self) -> bool:
        return all(not col for col in self.cols)

    def nnz(self) -> int:
        return sum(len(col) for col in self.cols)

    def column_sets(self) -> list[set[int]]:
        return [set(col) for col in self.cols]

    def rank(self) -> int:
        if self._rank is None:
            self._rank = rank_of_columns(self.column_sets())
        return self._rank

    def dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i in col:
                out[i][j] = 1
        return out

    def __matmul__(self, other: "GF2SparseMatrix") -> "GF2SparseMatrix":
        if other.nrows != self.ncols:
            raise ValueError("shape mismatch in matrix product")
        cols = []
        for col in other.cols:
            acc: set[int] = set()
            for k in col:
                acc ^= set(self.cols[k])
            cols.append(acc)
        return GF2SparseMatrix(self.nrows, other.ncols, cols)

    def apply(self, vector: Iterable[int]) -> set[int]:
        acc: set[int] = set()
        for j in vector:
            acc ^= set(self.cols[j])
        return acc

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GF2SparseMatrix)
            and self.shape == other.shape
            and self.cols == other.cols
        )

    def __repr__(self) -> str:
        return f"<GF2SparseMatrix {self.nrows}x{self.ncols} nnz={self.nnz()}>"


def rank_of_columns(cols: list[set[int]]) -> int:
    """GF(2) rank by column elimination with largest-row pivoting."""
    pivots: dict[int, set[int]] = {}
    rank = 0
    for col in cols:
        c = set(col)
        while c:
            p = max(c)
            other = pivots.get(p)
            if other is None:
                pivots[p] = c
                rank += 1
                break
            c ^= other
    return rank


def gf2_rank(matrix: GF2SparseMatrix) -> int:
    """Rank of a sparse GF(2) matrix; the input is not modified."""
    return matrix.rank()


def kernel_basis(matrix: GF2SparseMatrix) -> list[set[int]]:
    """A basis of the right kernel, as sets of column indices."""
    pivots: dict[int, tuple[set[int], set[int]]] = {}
    kernel: list[set[int]] = []
    for j, col in enumerate(matrix.cols):
        c = set(col)
        combo = {j}
        while c:
            p = max(c)
            hit = pivots.get(p)
            if hit is None:
                pivots[p] = (c, combo)
                break
            c = c ^ hit[0]
            combo = combo ^ hit[1]
        else:
            kernel.append(combo)
    return kernel


# ---------------------------------------------------------------------------
# Betti tables.
# ---------------------------------------------------------------------------

class BettiTable:
    """Map dimension -> mod-2 Betti number, with an explicit certified range.

    Entries are certified for ``n <= certified`` and known to vanish for
    ``n >= zero_from`` (when set); queries outside both windows raise, never
    silently return zero.
    """

    __slots__ = ("_entries", "certified", "zero_from")

    def __init__(
        self,
        entries: Mapping[int, int],
        certified: int,
        zero_from: Optional[int] = None,
    ):
        self._entries = {n: v for n, v in entries.items() if v}
        for n, v in self._entries.items():
            if v < 0:
                raise ValueError("Betti numbers are nonnegative")
            if n > certified:
                raise ValueError(f"nonzero entry at {n} outside the certified range")
            if zero_from is not None and n >= zero_from:
                raise ValueError(f"nonzero entry at {n} contradicts vanishing from {zero_from}")
        self.certified = certified
        self.zero_from = zero_from

    def __getitem__(self, n: int) -> int:
        if n < 0:
            return 0
        if n <= self.certified:
            return self._entries.get(n, 0)
        if self.zero_from is not None and n >= self.zero_from:
            return 0
        raise UncertifiedRangeError(
            f"Betti number at dimension {n} is outside the certified range "
            f"(certified through {self.certified})"
        )

    def covers(self, n: int) -> bool:
        return n <= self.certified or (self.zero_from is not None and n >= self.zero_from)

    @property
    def complete(self) -> bool:
        return self.zero_from is not None and self.zero_from <= self.certified + 1

    def support(self) -> list[int]:
        return sorted(self._entries)

    def through(self, n_max: int) -> dict[int, int]:
        return {n: self[n] for n in range(n_max + 1)}

    def nonzero(self) -> dict[int, int]:
        return dict(sorted(self._entries.items()))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BettiTable)
            and self._entries == other._entries
            and self.certified == other.certified
            and self.zero_from == other.zero_from
        )

    def __repr__(self) -> str:
        tail = "" if self.zero_from is None else f", 0 from {self.zero_from}"
        return f"BettiTable({self.nonzero()}, certified<={self.certified}{tail})"


def table_from_dict(entries: Mapping[int, int]) -> BettiTable:
    """A fully certified table: zero everywhere outside the given entries."""
    top = max((n for n, v in entries.items() if v), default=-1)
    return BettiTable(entries, certified=top, zero_from=top + 1)


def kunneth(a: BettiTable, b: BettiTable) -> BettiTable:
    """Field-coefficient Betti table of a smash product, by convolution."""
    entries: dict[int, int] = {}
    for p, vp in a.nonzero().items():
        for q, vq in b.nonzero().items():
            entries[p + q] = entries.get(p + q, 0) + vp * vq
    if a.zero_from is not None and b.zero_from is not None:
        zero_from: Optional[int] = max(a.zero_from + b.zero_from - 1, 0)
    else:
        zero_from = None

    def resolved(t: BettiTable, n: int) -> bool:
        return t.covers(n)

    certified = -1
    scan_cap = max(
        a.certified + b.certified + 2,
        (zero_from if zero_from is not None else 0),
    )
    for t in range(scan_cap + 1):
        ok = True
        for p in range(t + 1):
            q = t - p
            if resolved(a, p) and resolved(b, q):
                continue
            if resolved(a, p) and a[p] == 0:
                continue
            if resolved(b, q) and b[q] == 0:
                continue
            ok = False
            break
        if not ok:
            break
        certified = t
    return BettiTable(entries, certified=certified, zero_from=zero_from)


def kunneth_power(table: BettiTable, s: int) -> BettiTable:
    if s < 1:
        raise ValueError("smash power of tables needs s >= 1")
    out = table
    for _ in range(s - 1):
        out = kunneth(out, table)
    return out


# ---------------------------------------------------------------------------
# Chain complexes.
# ---------------------------------------------------------------------------

class ChainComplexGF2:
    """Normalized reduced chains of a pointed simplicial set over GF(2)."""

    def __init__(self, space: SimplicialSet, top: int, check: bool = True):
        need = min(top, space.top_dim())
        if need > space.truncation:
            raise TruncationError(
                f"chains through dimension {top} need truncation >= {need}"
            )
        self.space = space
        self.top = top
        bases: dict[int, tuple[Any, ...]] = {}
        for n in range(need + 1):
            keys = tuple(k for k in space.nondeg(n) if not (n == 0 and k == space.basepoint))
            bases[n] = keys
        self._bases = bases
        self._index = {
            n: {k: i for i, k in enumerate(keys)} for n, keys in bases.items()
        }
        matrices: dict[int, GF2SparseMatrix] = {}
        for n in range(1, need + 1):
            rows = len(bases.get(n - 1, ()))
            cols = []
            index = self._index.get(n - 1, {})
            for key in bases[n]:
                ref = SimplexRef(n, key, ())
                col: set[int] = set()
                for i in range(n + 1):
                    face = space.face_of(ref, i)
                    if face.word or space.is_basepoint_ref(face):
                        continue
                    col ^= {index[face.base]}
                cols.append(col)
            matrices[n] = GF2SparseMatrix(rows, len(bases[n]), cols)
        self._matrices = matrices
        if check:
            self.check_boundary_squares_to_zero()

    def basis(self, n: int) -> tuple[Any, ...]:
        return self._bases.get(n, ())

    def basis_index(self, n: int) -> Mapping[Any, int]:
        return self._index.get(n, {})

    def boundary(self, n: int) -> GF2SparseMatrix:
        mat = self._matrices.get(n)
        if mat is None:
            mat = GF2SparseMatrix.zero(len(self.basis(n - 1)), len(self.basis(n)))
        return mat

    def check_boundary_squares_to_zero(self) -> None:
        for n in sorted(self._matrices):
            if n - 1 not in self._matrices:
                continue
            lower = self._matrices[n - 1]
            for col in self._matrices[n].cols:
                acc: set[int] = set()
                for j in col:
                    acc ^= set(lower.cols[j])
                if acc:
                    raise ValueError(f"boundary does not square to zero at dimension {n}")

    def betti(self, n: int) -> int:
        cycles = len(self.basis(n)) - self.boundary(n).rank() if n >= 1 else len(self.basis(n))
        return cycles - self.boundary(n + 1).rank()


def chain_complex(space: SimplicialSet, top: int, check: bool = True) -> ChainComplexGF2:
    """Normalized reduced chain complex through dimension ``top``."""
    return ChainComplexGF2(space, top, check=check)


def reduced_betti(space: SimplicialSet, t_max: int) -> BettiTable:
    """Reduced mod-2 Betti numbers through dimension ``t_max``.

    Needs chains one dimension higher than the last certified entry, so the
    space must either be truncated past ``t_max`` or have no nondegenerate
    simplices there.
    """
    cc = chain_complex(space, t_max + 1)
    entries = {n: cc.betti(n) for n in range(t_max + 1)}
    return BettiTable(entries, certified=t_max, zero_from=space.top_dim() + 1)


# ---------------------------------------------------------------------------
# Homology bases and induced maps.
# ---------------------------------------------------------------------------

class HomologyBasis:
    """Cycle representatives spanning homology, with reduction data.

    Per dimension we keep an echelon spanning the cycle space whose leading
    entries are boundary columns first, then the chosen homology
    representatives; reducing any cycle against it expresses the cycle in
    the representative basis modulo boundaries.
    """

    def __init__(self, cc: ChainComplexGF2, t_max: int):
        if t_max + 1 > cc.top:
            raise TruncationError("homology basis needs chains one dimension higher")
        self.complex = cc
        self.t_max = t_max
        self._reps: dict[int, list[frozenset[int]]] = {}
        self._echelon: dict[int, dict[int, tuple[set[int], Optional[int]]]] = {}
        for n in range(t_max + 1):
            echelon: dict[int, tuple[set[int], Optional[int]]] = {}

            def insert(vec: set[int], tag: Optional[int]) -> Optional[set[int]]:
                v = set(vec)
                while v:
                    p = max(v)
                    hit = echelon.get(p)
                    if hit is None:
                        echelon[p] = (v, tag)
                        return v
                    v = v ^ hit[0]
                return None

            for col in cc.boundary(n + 1).cols:
                insert(set(col), None)
            reps: list[frozenset[int]] = []
            if n == 0:
                cycles = [{j} for j in range(len(cc.basis(0)))]
            else:
                cycles = kernel_basis(cc.boundary(n))
            for vec in cycles:
                reduced = insert(vec, len(reps))
                if reduced is not None:
                    reps.append(frozenset(reduced))
            self._reps[n] = reps
            self._echelon[n] = echelon

    def betti(self, n: int) -> int:
        return len(self._reps.get(n, ()))

    def representatives(self, n: int) -> list[frozenset[int]]:
        return list(self._reps.get(n, ()))

    def express(self, n: int, cycle: Iterable[int]) -> set[int]:
        """Coordinates of a cycle in the homology basis, modulo boundaries."""
        v = set(cycle)
        coords: set[int] = set()
        echelon = self._echelon.get(n, {})
        while v:
            p = max(v)
            hit = echelon.get(p)
            if hit is None:
                raise ValueError("vector is not a cycle of this complex")
            vec, tag = hit
            v = v ^ vec
            if tag is not None:
                coords ^= {tag}
        return coords


def induced_map(
    f: SimplicialMap,
    t_max: int,
    source_cc: Optional[ChainComplexGF2] = None,
    target_cc: Optional[ChainComplexGF2] = None,
) -> dict[int, GF2SparseMatrix]:
    """Matrices of the induced map on reduced mod-2 homology, per dimension.

    The chain map sends a basis simplex to its image when that image is
    nondegenerate and not the basepoint, and to zero otherwise.
    """
    src = source_cc or chain_complex(f.source, t_max + 1)
    tgt = target_cc or chain_complex(f.target, t_max + 1)
    src_h = HomologyBasis(src, t_max)
    tgt_h = HomologyBasis(tgt, t_max)
    out: dict[int, GF2SparseMatrix] = {}
    for n in range(t_max + 1):
        tgt_index = tgt.basis_index(n)
        chain_cols: list[set[int]] = []
        for key in src.basis(n):
            image = f.apply(SimplexRef(n, key, ()))
            if image.word or f.target.is_basepoint_ref(image):
                chain_cols.append(set())
            else:
                chain_cols.append({tgt_index[image.base]})
        cols = []
        for rep in src_h.representatives(n):
            pushed: set[int] = set()
            for j in rep:
                pushed ^= chain_cols[j]
            cols.append(tgt_h.express(n, pushed))
        out[n] = GF2SparseMatrix(tgt_h.betti(n), src_h.betti(n), cols)
    return out


def is_homologous_zero(f: SimplicialMap, t_max: int) -> bool:
    """Whether a map induces zero on reduced mod-2 homology through t_max."""
    return all(mat.is_zero() for mat in induced_map(f, t_max).values())


def quotient_betti_via_les(
    space: SimplicialSet, subset: PointedSubset, t_max: int
) -> BettiTable:
    """Betti table of space/subset from exact-sequence rank bookkeeping.

    Over a field the cofiber sequence subset -> space -> space/subset gives
    ``b_n(Q/S) = (b_n(Q) - rank i_n) + (b_{n-1}(S) - rank i_{n-1})`` with
    ``i`` the inclusion-induced map on homology.
    """
    incl = inclusion_map(subset)
    ranks = {n: mat.rank() for n, mat in induced_map(incl, t_max).items()}
    b_space = reduced_betti(space, t_max)
    b_sub = reduced_betti(subset, t_max)
    entries = {}
    for n in range(t_max + 1):
        prev = b_sub[n - 1] - ranks.get(n - 1, 0) if n >= 1 else 0
        entries[n] = b_space[n] - ranks.get(n, 0) + prev
    # the quotient has no cells above the ambient top dimension
    return BettiTable(entries, certified=t_max, zero_from=space.top_dim() + 1)
