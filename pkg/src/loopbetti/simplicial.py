"""Pointed simplicial sets presented by their nondegenerate simplices.

Every simplex of a simplicial set factors uniquely as a degeneracy word
applied to a nondegenerate base.  We store only the nondegenerate simplices
(per dimension, with a face table) and keep arbitrary simplices as
``SimplexRef`` values: a base plus a canonical degeneracy word.  All face and
degeneracy operators are then evaluated through the word calculus, so the
simplicial identities never have to be tabulated beyond the face table.

Canonical word form
-------------------
A degeneracy word is a strictly increasing tuple ``(j1 < j2 < ... < jk)``
denoting the composite ``s_{jk} ... s_{j1}`` with the rightmost operator
acting first.  Rewriting with ``s_i s_j = s_{j+1} s_i`` (``i <= j``) always
reaches this form, and the form is unique, so two refs are equal iff their
fields are equal.  A word reaching ambient dimension ``n`` is exactly a
subset of ``{0, ..., n-1}``.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from itertools import combinations
from typing import Any, Iterable, Iterator, Mapping, NamedTuple, Optional, Sequence


class TruncationError(ValueError):
    """A request needs simplex data beyond the stored truncation."""


class ValidationError(ValueError):
    """Structural data violates a simplicial-set invariant."""


class SimplexRef(NamedTuple):
    """A simplex: canonical degeneracy word applied to a nondegenerate base."""

    base_dim: int
    base: Any
    word: tuple[int, ...] = ()

    @property
    def dim(self) -> int:
        return self.base_dim + len(self.word)

    @property
    def is_degenerate(self) -> bool:
        return bool(self.word)


# ---------------------------------------------------------------------------
# Word calculus.
# ---------------------------------------------------------------------------

def insert_degeneracy(word: tuple[int, ...], j: int) -> tuple[int, ...]:
    """Canonical word for ``s_j`` composed outside an already canonical word.

    Rewriting pushes ``s_j`` inward past every ``s_w`` with ``w >= j``,
    bumping each such index by one; ``j`` itself survives unchanged.
    """
    out = [w if w < j else w + 1 for w in word]
    out.insert(bisect_left(out, j), j)
    return tuple(out)


def face_through_word(word: tuple[int, ...], i: int):
    """Push ``d_i`` from outside through a canonical degeneracy word.

    Returns ``(emitted, outcome)`` where ``emitted`` lists the degeneracy
    indices produced on the outside (outermost first) and ``outcome`` is
    either ``("cancel", inner_word)`` when the face met a matching
    degeneracy, or ``("base", i2)`` when ``d_{i2}`` reaches the base.
    Uses ``d_i s_j = s_{j-1} d_i`` (i < j), ``d_j s_j = d_{j+1} s_j = id``
    and ``d_i s_j = s_j d_{i-1}`` (i > j + 1).
    """
    emitted: list[int] = []
    k = i
    for pos in range(len(word) - 1, -1, -1):
        w = word[pos]
        if k == w or k == w + 1:
            return emitted, ("cancel", word[:pos])
        if k < w:
            emitted.append(w - 1)
        else:
            emitted.append(w)
            k -= 1
    return emitted, ("base", k)


def strip_word(word: tuple[int, ...], shared: Sequence[int]) -> tuple[int, ...]:
    """Remove the indices in ``shared`` from ``word`` and renumber the rest."""
    sh = sorted(shared)
    shared_set = set(sh)
    return tuple(w - bisect_right(sh, w) for w in word if w not in shared_set)


def expand_word(word: tuple[int, ...], shared: Sequence[int], n: int) -> tuple[int, ...]:
    """Inverse of :func:`strip_word`: re-insert ``shared`` at ambient ``n``."""
    sh = sorted(shared)
    shared_set = set(sh)
    complement = [x for x in range(n) if x not in shared_set]
    return tuple(sorted([complement[w] for w in word] + sh))


def vertex_word(n: int) -> tuple[int, ...]:
    """The unique degeneracy word taking a vertex to ambient dimension n."""
    return tuple(range(n))


# ---------------------------------------------------------------------------
# Simplicial sets.
# ---------------------------------------------------------------------------

class SimplicialSet:
    """Base for pointed simplicial sets; subclasses supply nondegenerate data.

    Subclasses implement ``nondeg``, ``_base_face``, ``top_dim`` and
    ``basepoint``; the word calculus (``face_of``, ``degenerate_of``) is
    shared.  All instances are immutable after construction, so any
    operation may run concurrently on shared inputs.
    """

    truncation: int

    # -- subclass contract -------------------------------------------------
    def nondeg(self, n: int) -> Sequence[Any]:
        raise NotImplementedError

    def _base_face(self, base: Any, dim: int, i: int) -> SimplexRef:
        raise NotImplementedError

    def top_dim(self) -> int:
        """Largest dimension that can carry a nondegenerate simplex."""
        raise NotImplementedError

    @property
    def basepoint(self) -> Any:
        raise NotImplementedError

    # -- shared operator algebra -------------------------------------------
    def dims(self) -> range:
        return range(self.truncation + 1)

    def iter_nondeg(self, n: int) -> Iterator[Any]:
        return iter(self.nondeg(n))

    def face_of(self, ref: SimplexRef, i: int) -> SimplexRef:
        """Canonical form of ``d_i`` applied to an arbitrary simplex."""
        n = ref.dim
        if n == 0:
            raise ValueError("a vertex has no faces")
        if not 0 <= i <= n:
            raise ValueError(f"face index {i} out of range for dimension {n}")
        emitted, outcome = face_through_word(ref.word, i)
        if outcome[0] == "cancel":
            out = SimplexRef(ref.base_dim, ref.base, outcome[1])
        else:
            # the face survived the whole word, so the base is positive-dim
            out = self._base_face(ref.base, ref.base_dim, outcome[1])
        for e in reversed(emitted):
            out = self.degenerate_of(out, e)
        return out

    def degenerate_of(self, ref: SimplexRef, j: int) -> SimplexRef:
        """Canonical form of ``s_j`` applied to an arbitrary simplex."""
        n = ref.dim
        if not 0 <= j <= n:
            raise ValueError(f"degeneracy index {j} out of range for dimension {n}")
        if n + 1 > self.truncation:
            raise TruncationError(
                f"degeneracy to dimension {n + 1} exceeds truncation {self.truncation}"
            )
        return SimplexRef(ref.base_dim, ref.base, insert_degeneracy(ref.word, j))

    def apply_word(self, ref: SimplexRef, word: Iterable[int]) -> SimplexRef:
        """Apply a canonical word (ascending = order of application)."""
        for j in word:
            ref = self.degenerate_of(ref, j)
        return ref

    def basepoint_ref(self, n: int) -> SimplexRef:
        return SimplexRef(0, self.basepoint, vertex_word(n))

    def is_basepoint_ref(self, ref: SimplexRef) -> bool:
        return ref.base_dim == 0 and ref.base == self.basepoint

    def key_ref(self, n: int, key: Any) -> SimplexRef:
        return SimplexRef(n, key, ())

    # -- enumeration helpers -------------------------------------------------
    def refs_at(self, n: int, include_basepoint: bool = True) -> list[SimplexRef]:
        """All simplices at ambient dimension ``n`` (degenerate ones included).

        A canonical word from base dimension ``p`` to ambient ``n`` is any
        ``(n - p)``-subset of ``{0, ..., n-1}``, so enumeration is by shuffles.
        """
        if n > self.truncation:
            raise TruncationError(f"dimension {n} beyond truncation {self.truncation}")
        out: list[SimplexRef] = []
        for p in range(min(n, self.top_dim()) + 1):
            for key in self.nondeg(p):
                if not include_basepoint and p == 0 and key == self.basepoint:
                    continue
                for word in combinations(range(n), n - p):
                    out.append(SimplexRef(p, key, word))
        return out

    def index_of(self, n: int, key: Any) -> int:
        index = getattr(self, "_index_cache", None)
        if index is None:
            index = {}
            object.__setattr__(self, "_index_cache", index)
        if n not in index:
            index[n] = {k: i for i, k in enumerate(self.nondeg(n))}
        return index[n][key]

    def key_sort_value(self, n: int, key: Any):
        """A deterministic sort value for nondegenerate keys at dimension n."""
        return self.index_of(n, key)

    def ref_sort_value(self, ref: SimplexRef):
        return (ref.base_dim, self.key_sort_value(ref.base_dim, ref.base), ref.word)

    # -- validation ----------------------------------------------------------
    def check_face_identities(self, max_dim: Optional[int] = None) -> None:
        """Check d_i d_j = d_{j-1} d_i (i < j) on every stored simplex."""
        top = min(self.top_dim(), self.truncation if max_dim is None else max_dim)
        for n in range(2, top + 1):
            for key in self.nondeg(n):
                ref = self.key_ref(n, key)
                for j in range(1, n + 1):
                    dj = self.face_of(ref, j)
                    for i in range(j):
                        lhs = self.face_of(dj, i)
                        rhs = self.face_of(self.face_of(ref, i), j - 1)
                        if lhs != rhs:
                            raise ValidationError(
                                f"face identity fails on {key!r}: "
                                f"d_{i} d_{j} != d_{j - 1} d_{i}"
                            )


class FiniteSimplicialSet(SimplicialSet):
    """A finite pointed simplicial set with explicit tables.

    ``simplices`` lists the nondegenerate simplices per dimension; ``faces``
    gives, for each nondegenerate simplex of dimension ``n >= 1``, its
    ``n + 1`` faces as canonical refs.  Face entries may be written as
    ``"label"`` (nondegenerate) or ``"s1s0@label"`` (degenerate; operators
    outermost first) when all keys are strings.
    """

    def __init__(
        self,
        truncation: int,
        simplices: Mapping[int, Sequence[Any]],
        faces: Mapping[Any, Sequence[Any]],
        basepoint: Any = None,
        check: bool = True,
    ):
        if truncation < 0:
            raise ValidationError("truncation must be nonnegative")
        self.truncation = truncation
        self._simplices: dict[int, tuple[Any, ...]] = {}
        for n in sorted(simplices):
            if n < 0 or n > truncation:
                raise TruncationError(f"simplex dimension {n} outside 0..{truncation}")
            self._simplices[n] = tuple(simplices[n])
        if not self._simplices.get(0):
            raise ValidationError("a pointed simplicial set needs at least one vertex")
        self._dim_of: dict[Any, int] = {}
        for n, keys in self._simplices.items():
            for key in keys:
                if key in self._dim_of:
                    raise ValidationError(f"duplicate simplex identifier {key!r}")
                self._dim_of[key] = n
        self._basepoint = self._simplices[0][0] if basepoint is None else basepoint
        if self._dim_of.get(self._basepoint) != 0:
            raise ValidationError(f"basepoint {self._basepoint!r} is not a vertex")
        self._faces: dict[Any, tuple[SimplexRef, ...]] = {}
        for key, entries in faces.items():
            n = self._dim_of.get(key)
            if n is None:
                raise ValidationError(f"faces given for unknown simplex {key!r}")
            if n == 0:
                raise ValidationError(f"vertex {key!r} cannot have faces")
            if len(entries) != n + 1:
                raise ValidationError(
                    f"simplex {key!r} of dimension {n} needs {n + 1} faces"
                )
            self._faces[key] = tuple(self._coerce_ref(e, n - 1) for e in entries)
        for n, keys in self._simplices.items():
            if n == 0:
                continue
            for key in keys:
                if key not in self._faces:
                    raise ValidationError(f"missing face list for simplex {key!r}")
        if check:
            self.check_face_identities()

    def _coerce_ref(self, entry: Any, ambient: int) -> SimplexRef:
        if isinstance(entry, SimplexRef):
            ref = entry
        elif isinstance(entry, str):
            ref = parse_ref_token(entry, self._dim_of)
        else:
            raise ValidationError(f"cannot interpret face entry {entry!r}")
        if ref.base not in self._dim_of or self._dim_of[ref.base] != ref.base_dim:
            raise ValidationError(f"face ref {entry!r} names an unknown simplex")
        if ref.dim != ambient:
            raise ValidationError(
                f"face ref {entry!r} has dimension {ref.dim}, expected {ambient}"
            )
        if tuple(sorted(set(ref.word))) != ref.word or (
            ref.word and not 0 <= ref.word[0] <= ref.word[-1] < ambient
        ):
            raise ValidationError(f"face ref {entry!r} has a non-canonical word")
        return ref

    # -- protocol ------------------------------------------------------------
    def nondeg(self, n: int) -> tuple[Any, ...]:
        if n > self.truncation:
            raise TruncationError(f"dimension {n} beyond truncation {self.truncation}")
        return self._simplices.get(n, ())

    def _base_face(self, base: Any, dim: int, i: int) -> SimplexRef:
        return self._faces[base][i]

    def top_dim(self) -> int:
        # _top_bound records the honest bound when a constructor could only
        # materialize part of a larger object (for example a quotient of a
        # truncated smash power)
        override = getattr(self, "_top_bound", None)
        if override is not None:
            return override
        return max((n for n, keys in self._simplices.items() if keys), default=0)

    @property
    def basepoint(self) -> Any:
        return self._basepoint

    def dim_of(self, key: Any) -> int:
        return self._dim_of[key]

    def simplex(self, key: Any) -> SimplexRef:
        """The ref of a stored nondegenerate simplex, looked up by identifier."""
        return SimplexRef(self._dim_of[key], key, ())

    def __repr__(self) -> str:
        counts = ",".join(str(len(self._simplices.get(n, ()))) for n in range(self.top_dim() + 1))
        return f"<FiniteSimplicialSet dims [{counts}] trunc {self.truncation}>"


# ---------------------------------------------------------------------------
# Refs as text (shared by builders and the file format).
# ---------------------------------------------------------------------------

def parse_ref_token(token: str, dim_of: Mapping[Any, int]) -> SimplexRef:
    """Parse ``"label"`` or ``"s1s0@label"`` into a SimplexRef.

    Operators are written outermost first, so the indices must be strictly
    decreasing left to right; the stored word is their reversal.
    """
    word: tuple[int, ...] = ()
    label = token
    if "@" in token:
        word_part, label = token.split("@", 1)
        if not word_part or word_part[0] != "s":
            raise ValidationError(f"malformed degeneracy word in {token!r}")
        try:
            ops = [int(piece) for piece in word_part[1:].split("s")]
        except ValueError:
            raise ValidationError(f"malformed degeneracy word in {token!r}") from None
        word = tuple(reversed(ops))
        if any(a >= b for a, b in zip(word, word[1:])) or (word and word[0] < 0):
            raise ValidationError(f"degeneracy word in {token!r} is not canonical")
    if label not in dim_of:
        raise ValidationError(f"unknown simplex {label!r} in face entry {token!r}")
    return SimplexRef(dim_of[label], label, word)


def format_ref(ref: SimplexRef) -> str:
    if not ref.word:
        return str(ref.base)
    ops = "".join(f"s{j}" for j in reversed(ref.word))
    return f"{ops}@{ref.base}"


# ---------------------------------------------------------------------------
# Involutions.
# ---------------------------------------------------------------------------

class Involution:
    """An order-<=2 simplicial automorphism fixing the basepoint.

    Given as a mapping on nondegenerate simplices (absent keys are fixed).
    It must square to the identity and commute with every face map.
    """

    def __init__(self, space: FiniteSimplicialSet, mapping: Mapping[Any, Any] = (), check: bool = True):
        self.space = space
        self._map: dict[Any, Any] = dict(mapping) if mapping else {}
        for src, dst in self._map.items():
            if src not in space._dim_of or dst not in space._dim_of:
                raise ValidationError(f"involution names unknown simplex {src!r} -> {dst!r}")
            if space.dim_of(src) != space.dim_of(dst):
                raise ValidationError(f"involution {src!r} -> {dst!r} changes dimension")
        if check:
            self.check()

    def __call__(self, key: Any) -> Any:
        return self._map.get(key, key)

    def apply_ref(self, ref: SimplexRef) -> SimplexRef:
        # an involution commutes with degeneracies, so the word is untouched
        return SimplexRef(ref.base_dim, self(ref.base), ref.word)

    @property
    def is_trivial(self) -> bool:
        return all(self(k) == k for k in self._map)

    def fixed(self, n: int) -> tuple[Any, ...]:
        return tuple(k for k in self.space.nondeg(n) if self(k) == k)

    def check(self) -> None:
        space = self.space
        if self(space.basepoint) != space.basepoint:
            raise ValidationError("involution moves the basepoint")
        for n in range(space.top_dim() + 1):
            for key in space.nondeg(n):
                if self(self(key)) != key:
                    raise ValidationError(f"involution does not square to one at {key!r}")
                if n == 0:
                    continue
                image = self(key)
                for i in range(n + 1):
                    lhs = self.apply_ref(space._base_face(key, n, i))
                    rhs = space._base_face(image, n, i)
                    if lhs != rhs:
                        raise ValidationError(
                            f"involution fails to commute with d_{i} at {key!r}"
                        )


# ---------------------------------------------------------------------------
# Pointed subsets.
# ---------------------------------------------------------------------------

class PointedSubset(SimplicialSet):
    """A face-closed set of nondegenerate simplices of an ambient set.

    Contains the basepoint.  A subset is itself a pointed simplicial set
    (faces are taken in the ambient set and stay inside), so homology can be
    computed on it directly.  ``top_bound`` may be supplied when the
    construction guarantees there are no members above some dimension even
    though enumeration stopped at ``truncation``.
    """

    def __init__(
        self,
        ambient: SimplicialSet,
        members: Mapping[int, Iterable[Any]],
        truncation: Optional[int] = None,
        top_bound: Optional[int] = None,
        check: bool = True,
    ):
        self.ambient = ambient
        self.truncation = ambient.truncation if truncation is None else truncation
        if self.truncation > ambient.truncation:
            raise TruncationError("subset truncation exceeds the ambient truncation")
        member_sets: dict[int, set[Any]] = {n: set(keys) for n, keys in members.items() if keys}
        member_sets.setdefault(0, set()).add(ambient.basepoint)
        self._member_sets = member_sets
        self._members: dict[int, tuple[Any, ...]] = {
            n: tuple(sorted(keys, key=lambda k: ambient.key_sort_value(n, k)))
            for n, keys in member_sets.items()
        }
        if top_bound is None:
            if self.truncation >= ambient.top_dim():
                top_bound = max((n for n, ks in self._members.items() if ks), default=0)
            else:
                top_bound = ambient.top_dim()
        self._top_bound = min(top_bound, ambient.top_dim())
        if check:
            self.check_closure()

    # -- protocol ------------------------------------------------------------
    def nondeg(self, n: int) -> tuple[Any, ...]:
        if n > self.truncation:
            raise TruncationError(f"dimension {n} beyond subset truncation {self.truncation}")
        return self._members.get(n, ())

    def _base_face(self, base: Any, dim: int, i: int) -> SimplexRef:
        return self.ambient._base_face(base, dim, i)

    def top_dim(self) -> int:
        return self._top_bound

    @property
    def basepoint(self) -> Any:
        return self.ambient.basepoint

    def key_sort_value(self, n: int, key: Any):
        return self.ambient.key_sort_value(n, key)

    # -- set behaviour ---------------------------------------------------------
    def contains_key(self, n: int, key: Any) -> bool:
        return key in self._member_sets.get(n, ())

    def contains_ref(self, ref: SimplexRef) -> bool:
        """Whether a simplex (possibly degenerate) lies in the subset."""
        return self.contains_key(ref.base_dim, ref.base)

    def member_dims(self) -> list[int]:
        return sorted(n for n, ks in self._members.items() if ks)

    def counts(self) -> dict[int, int]:
        return {n: len(ks) for n, ks in self._members.items() if ks}

    def same_members(self, other: "PointedSubset") -> bool:
        dims = set(self._member_sets) | set(other._member_sets)
        return all(
            self._member_sets.get(n, set()) == other._member_sets.get(n, set())
            for n in dims
        )

    def union(self, other: "PointedSubset") -> "PointedSubset":
        dims = set(self._member_sets) | set(other._member_sets)
        merged = {
            n: self._member_sets.get(n, set()) | other._member_sets.get(n, set())
            for n in dims
        }
        return PointedSubset(
            self.ambient,
            merged,
            truncation=min(self.truncation, other.truncation),
            top_bound=max(self._top_bound, other._top_bound),
            check=False,
        )

    def check_closure(self) -> None:
        for n in sorted(self._member_sets):
            if n == 0:
                continue
            for key in self._member_sets[n]:
                ref = SimplexRef(n, key, ())
                for i in range(n + 1):
                    face = self.ambient.face_of(ref, i)
                    if not self.contains_ref(face):
                        raise ValidationError(
                            f"subset is not face-closed: face {i} of {key!r} escapes"
                        )

    def __repr__(self) -> str:
        return f"<PointedSubset {self.counts()} of {self.ambient!r}>"


def whole_subset(space: SimplicialSet, truncation: Optional[int] = None) -> PointedSubset:
    trunc = space.truncation if truncation is None else truncation
    members = {n: space.nondeg(n) for n in range(min(trunc, space.top_dim()) + 1)}
    return PointedSubset(space, members, truncation=trunc, check=False)


def basepoint_subset(space: SimplicialSet) -> PointedSubset:
    return PointedSubset(space, {0: [space.basepoint]}, top_bound=0, check=False)


# ---------------------------------------------------------------------------
# Simplicial maps.
# ---------------------------------------------------------------------------

class SimplicialMap:
    """A pointed simplicial map, stored on nondegenerate source simplices.

    ``mapping[n][key]`` is the canonical image ref in the target.  The map is
    extended to degenerate simplices by ``f(s_W x) = s_W f(x)``; validation
    checks that it commutes with every face operator.
    """

    def __init__(
        self,
        source: SimplicialSet,
        target: SimplicialSet,
        mapping: Mapping[int, Mapping[Any, SimplexRef]],
        check: bool = True,
    ):
        self.source = source
        self.target = target
        self._mapping = {n: dict(m) for n, m in mapping.items()}
        if check:
            self.check()

    def apply(self, ref: SimplexRef) -> SimplexRef:
        image = self._mapping[ref.base_dim][ref.base]
        return self.target.apply_word(image, ref.word)

    def apply_key(self, n: int, key: Any) -> SimplexRef:
        return self._mapping[n][key]

    def compose(self, other: "SimplicialMap") -> "SimplicialMap":
        """The composite ``self . other`` (other first)."""
        if other.target is not self.source:
            raise ValidationError("composition needs matching middle spaces")
        mapping = {
            n: {key: self.apply(ref) for key, ref in level.items()}
            for n, level in other._mapping.items()
        }
        return SimplicialMap(other.source, self.target, mapping, check=False)

    def check(self) -> None:
        src, tgt = self.source, self.target
        top = min(src.top_dim(), src.truncation)
        for n in range(top + 1):
            for key in src.nondeg(n):
                if key not in self._mapping.get(n, {}):
                    raise ValidationError(f"map misses simplex {key!r}")
                image = self._mapping[n][key]
                if image.dim != n:
                    raise ValidationError(f"map changes dimension at {key!r}")
        bp_image = self._mapping[0][src.basepoint]
        if not tgt.is_basepoint_ref(bp_image):
            raise ValidationError("map does not preserve the basepoint")
        for n in range(1, top + 1):
            for key in src.nondeg(n):
                ref = SimplexRef(n, key, ())
                image = self._mapping[n][key]
                for i in range(n + 1):
                    lhs = self.apply(src.face_of(ref, i))
                    rhs = tgt.face_of(image, i)
                    if lhs != rhs:
                        raise ValidationError(
                            f"map fails to commute with d_{i} at {key!r}"
                        )


def identity_map(space: SimplicialSet) -> SimplicialMap:
    mapping = {
        n: {key: SimplexRef(n, key, ()) for key in space.nondeg(n)}
        for n in range(min(space.top_dim(), space.truncation) + 1)
    }
    return SimplicialMap(space, space, mapping, check=False)


def constant_map(source: SimplicialSet, target: SimplicialSet) -> SimplicialMap:
    mapping = {
        n: {key: target.basepoint_ref(n) for key in source.nondeg(n)}
        for n in range(min(source.top_dim(), source.truncation) + 1)
    }
    return SimplicialMap(source, target, mapping, check=False)


def inclusion_map(subset: PointedSubset) -> SimplicialMap:
    """The inclusion of a pointed subset into its ambient set."""
    mapping = {
        n: {key: SimplexRef(n, key, ()) for key in subset.nondeg(n)}
        for n in range(min(subset.top_dim(), subset.truncation) + 1)
    }
    return SimplicialMap(subset, subset.ambient, mapping, check=False)
