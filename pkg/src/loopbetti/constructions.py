"""Constructions on pointed simplicial sets: products, smashes, quotients,
orbit spaces of involutions, and sections of the orbit projection.

Products and smash powers only ever materialize nondegenerate simplices.  A
nondegenerate n-simplex of a product is a tuple of component simplices at
ambient dimension n whose degeneracy words have empty common intersection
(a shared index would factor out as a degeneracy of the whole tuple), so
enumeration is by shuffles.  Smash powers of even modest spaces explode
combinatorially, so ``TupleSpace`` enumerates per dimension on demand and
caches; faces are computed componentwise and renormalized, which needs no
enumeration at all.
"""

from __future__ import annotations

from typing import Any, Optional, Sequence

from .simplicial import (
    FiniteSimplicialSet,
    Involution,
    PointedSubset,
    SimplexRef,
    SimplicialMap,
    SimplicialSet,
    TruncationError,
    ValidationError,
    strip_word,
)


class TupleSpace(SimplicialSet):
    """Product or smash product of pointed simplicial sets, tuple-encoded.

    Keys are tuples of component ``SimplexRef`` values at a common ambient
    dimension with no degeneracy index shared by every component.  For a
    smash product, tuples with a basepoint component collapse to the
    basepoint.  Simplices are enumerated lazily per dimension.
    """

    def __init__(self, factors: Sequence[SimplicialSet], truncation: int, smash: bool):
        if not factors:
            raise ValidationError("a tuple space needs at least one factor")
        for f in factors:
            if truncation > f.truncation:
                raise TruncationError(
                    "factor truncation is smaller than the requested truncation"
                )
        self.factors = tuple(factors)
        self.truncation = truncation
        self.smash = smash
        self._bp = tuple(SimplexRef(0, f.basepoint, ()) for f in self.factors)
        self._nondeg_cache: dict[int, tuple[Any, ...]] = {}
        self._pool_cache: dict[int, list[tuple[SimplexRef, frozenset]]] = {}
        self._top = sum(f.top_dim() for f in self.factors)
        # component faces come from tiny pools and repeat across tuples, so
        # memoize them per distinct factor
        caches: dict[int, dict] = {}
        self._comp_face_caches = tuple(
            caches.setdefault(id(f), {}) for f in self.factors
        )

    # -- protocol ------------------------------------------------------------
    @property
    def basepoint(self) -> Any:
        return self._bp

    def top_dim(self) -> int:
        # the honest bound on nondegenerate dimensions; enumeration beyond
        # the truncation still raises, it does not silently return nothing
        return self._top

    def nondeg(self, n: int) -> tuple[Any, ...]:
        if n > self.truncation:
            raise TruncationError(f"dimension {n} beyond truncation {self.truncation}")
        if n not in self._nondeg_cache:
            self._nondeg_cache[n] = tuple(self.iter_nondeg(n))
        return self._nondeg_cache[n]

    def iter_nondeg(self, n: int):
        """Yield the nondegenerate n-simplices without materializing them."""
        if n > self.truncation:
            raise TruncationError(f"dimension {n} beyond truncation {self.truncation}")
        cached = self._nondeg_cache.get(n)
        if cached is not None:
            yield from cached
            return
        if self.smash and n == 0:
            yield self._bp
        yield from self._enumerate(n)

    def _base_face(self, key: Any, dim: int, i: int) -> SimplexRef:
        comps = []
        for f, memo, comp in zip(self.factors, self._comp_face_caches, key):
            face = memo.get((comp, i))
            if face is None:
                face = f.face_of(comp, i)
                memo[(comp, i)] = face
            comps.append(face)
        return self.canonical_ref(comps)

    def key_sort_value(self, n: int, key: Any):
        return tuple(
            f.ref_sort_value(comp) for f, comp in zip(self.factors, key)
        )

    # -- tuple calculus --------------------------------------------------------
    def canonical_ref(self, comps: Sequence[SimplexRef]) -> SimplexRef:
        """Canonical ref of the simplex with the given component tuple.

        Degeneracy indices shared by all components are stripped into the
        outer word; in a smash product a basepoint component collapses the
        whole simplex onto the basepoint.
        """
        n = comps[0].dim
        if self.smash:
            for f, comp in zip(self.factors, comps):
                if comp.base_dim == 0 and comp.base == f.basepoint:
                    return self.basepoint_ref(n)
        shared = set(comps[0].word)
        for comp in comps[1:]:
            shared &= set(comp.word)
            if not shared:
                break
        if not shared:
            return SimplexRef(n, tuple(comps), ())
        sh = tuple(sorted(shared))
        stripped = tuple(
            SimplexRef(c.base_dim, c.base, strip_word(c.word, sh)) for c in comps
        )
        return SimplexRef(n - len(sh), stripped, sh)

    def components(self, ref: SimplexRef) -> tuple[SimplexRef, ...]:
        """Component tuple of an arbitrary simplex at its ambient dimension."""
        if self.smash and self.is_basepoint_ref(ref):
            return tuple(
                f.basepoint_ref(ref.dim) if ref.word else SimplexRef(0, f.basepoint, ())
                for f in self.factors
            )
        return tuple(
            f.apply_word(comp, ref.word) for f, comp in zip(self.factors, ref.base)
        )

    def component_pool(self, n: int) -> list[tuple[SimplexRef, frozenset]]:
        """Simplices of a factor at ambient dimension n, with their word sets.

        Valid for identical-factor powers; for mixed factors use
        ``refs_at`` on each factor.  Basepoint-based refs are omitted for a
        smash (they collapse), kept for a product.
        """
        if n not in self._pool_cache:
            pool = [
                (r, frozenset(r.word))
                for r in self.factors[0].refs_at(n, include_basepoint=not self.smash)
            ]
            self._pool_cache[n] = pool
        return self._pool_cache[n]

    def _enumerate(self, n: int):
        pools = []
        for f in self.factors:
            pool = [
                (r, frozenset(r.word))
                for r in f.refs_at(n, include_basepoint=not self.smash)
            ]
            pools.append(pool)
        # remaining_cap[c]: most intersection a suffix of components can clear
        caps = [0] * (len(self.factors) + 1)
        for c in range(len(self.factors) - 1, -1, -1):
            caps[c] = caps[c + 1] + self.factors[c].top_dim()
        s = len(self.factors)
        acc: list[SimplexRef] = []

        def rec(c: int, inter: frozenset):
            if c == s:
                if not inter:
                    yield tuple(acc)
                return
            for ref, words in pools[c]:
                ninter = words if c == 0 else (inter & words)
                if len(ninter) > caps[c + 1]:
                    continue
                acc.append(ref)
                yield from rec(c + 1, ninter)
                acc.pop()

        yield from rec(0, frozenset())


def product(q: SimplicialSet, r: SimplicialSet, truncation: Optional[int] = None) -> TupleSpace:
    """Dimensionwise product of two pointed simplicial sets."""
    if truncation is None:
        truncation = min(q.truncation, r.truncation)
    return TupleSpace((q, r), truncation, smash=False)


def smash(q: SimplicialSet, r: SimplicialSet, truncation: Optional[int] = None) -> TupleSpace:
    """Smash product: the product with the axes collapsed to the basepoint."""
    if truncation is None:
        truncation = min(q.truncation, r.truncation)
    return TupleSpace((q, r), truncation, smash=True)


def smash_power(q: SimplicialSet, s: int, truncation: Optional[int] = None) -> TupleSpace:
    """The s-fold smash power of a pointed simplicial set, s >= 1."""
    if s < 1:
        raise ValidationError("smash power needs s >= 1; use a point for s = 0")
    if truncation is None:
        truncation = q.truncation
    return TupleSpace((q,) * s, truncation, smash=True)


def wedge_axes_subset(prod: TupleSpace) -> PointedSubset:
    """The subset of a product whose simplices touch a basepoint component."""
    if prod.smash:
        raise ValidationError("the axes subset lives in the product, not the smash")
    members: dict[int, list[Any]] = {}
    for n in range(min(prod.truncation, prod.top_dim()) + 1):
        hit = []
        for key in prod.nondeg(n):
            if any(
                c.base_dim == 0 and c.base == f.basepoint
                for f, c in zip(prod.factors, key)
            ):
                hit.append(key)
        if hit:
            members[n] = hit
    return PointedSubset(prod, members, check=False)


# ---------------------------------------------------------------------------
# Quotients.
# ---------------------------------------------------------------------------

def quotient(space: SimplicialSet, subset: PointedSubset) -> tuple[FiniteSimplicialSet, SimplicialMap]:
    """Collapse a pointed subset to the basepoint.

    The quotient keeps the nondegenerate simplices outside the subset plus
    the basepoint; any face landing in the subset is redirected to the
    matching basepoint degeneracy, which keeps the face table total.
    Returns the quotient and the projection map.
    """
    if subset.ambient is not space:
        raise ValidationError("subset does not live in the space being collapsed")
    top = min(space.top_dim(), space.truncation)
    simplices: dict[int, list[Any]] = {0: [space.basepoint]}
    for n in range(top + 1):
        kept = [
            key
            for key in space.nondeg(n)
            if not subset.contains_key(n, key) and key != space.basepoint
        ]
        if kept:
            simplices.setdefault(n, []).extend(kept)
    quot = FiniteSimplicialSet.__new__(FiniteSimplicialSet)
    quot.truncation = space.truncation
    quot._simplices = {n: tuple(keys) for n, keys in simplices.items()}
    quot._dim_of = {key: n for n, keys in simplices.items() for key in keys}
    quot._basepoint = space.basepoint
    if space.top_dim() > space.truncation:
        # only part of the quotient could be materialized
        quot._top_bound = space.top_dim()

    def project(ref: SimplexRef) -> SimplexRef:
        if subset.contains_ref(ref):
            return quot.basepoint_ref(ref.dim)
        return ref

    faces: dict[Any, tuple[SimplexRef, ...]] = {}
    for n in range(1, top + 1):
        for key in simplices.get(n, ()):
            ref = SimplexRef(n, key, ())
            faces[key] = tuple(project(space.face_of(ref, i)) for i in range(n + 1))
    quot._faces = faces
    mapping = {
        n: {key: project(SimplexRef(n, key, ())) for key in space.nondeg(n)}
        for n in range(top + 1)
    }
    projection = SimplicialMap(space, quot, mapping, check=False)
    return quot, projection


# ---------------------------------------------------------------------------
# Orbit spaces and sections.
# ---------------------------------------------------------------------------

def orbit_space(
    space: FiniteSimplicialSet, invol: Involution
) -> tuple[FiniteSimplicialSet, SimplicialMap, PointedSubset]:
    """Orbit space of an involution, with projection and fixed subset.

    The orbit space has one nondegenerate simplex per orbit (represented by
    the earlier element in the stored order); fixed simplices have singleton
    orbits, so the fixed set embeds as a pointed subset of the quotient.
    """
    if invol.space is not space:
        raise ValidationError("involution acts on a different space")
    rep: dict[Any, Any] = {}
    top = space.top_dim()
    for n in range(top + 1):
        for key in space.nondeg(n):
            other = invol(key)
            if space.index_of(n, other) < space.index_of(n, key):
                rep[key] = other
            else:
                rep[key] = key
    simplices = {
        n: tuple(k for k in space.nondeg(n) if rep[k] == k) for n in range(top + 1)
    }
    orbit = FiniteSimplicialSet.__new__(FiniteSimplicialSet)
    orbit.truncation = space.truncation
    orbit._simplices = {n: keys for n, keys in simplices.items() if keys}
    orbit._dim_of = {key: n for n, keys in simplices.items() for key in keys}
    orbit._basepoint = space.basepoint
    faces: dict[Any, tuple[SimplexRef, ...]] = {}
    for n in range(1, top + 1):
        for key in simplices.get(n, ()):
            entries = []
            for i in range(n + 1):
                f = space._base_face(key, n, i)
                entries.append(SimplexRef(f.base_dim, rep[f.base], f.word))
            faces[key] = tuple(entries)
    orbit._faces = faces
    mapping = {
        n: {key: SimplexRef(n, rep[key], ()) for key in space.nondeg(n)}
        for n in range(top + 1)
    }
    projection = SimplicialMap(space, orbit, mapping, check=False)
    fixed_members = {n: invol.fixed(n) for n in range(top + 1)}
    fixed = PointedSubset(orbit, fixed_members, check=False)
    return orbit, projection, fixed


def find_section(space: FiniteSimplicialSet, invol: Involution) -> Optional[PointedSubset]:
    """Search for a simplicial section of the orbit projection.

    A section exists iff one representative can be picked from every free
    orbit so that, together with the fixed simplices, the choice is closed
    under faces.  Orbits are processed by increasing dimension (faces only
    constrain lower dimensions); within a dimension forced orbits are
    propagated before branching, and the search backtracks across
    dimensions.  Returns the witness subset, or None when no section exists.
    """
    space_top = space.top_dim()
    chosen: dict[frozenset, Any] = {}
    fixed_sets = {n: set(invol.fixed(n)) for n in range(space_top + 1)}

    def orbit_id(key: Any) -> frozenset:
        return frozenset((key, invol(key)))

    def consistent(n: int, key: Any) -> bool:
        if n == 0:
            return True
        ref = SimplexRef(n, key, ())
        for i in range(n + 1):
            base = space.face_of(ref, i).base
            base_dim = space.dim_of(base)
            if base in fixed_sets[base_dim]:
                continue
            if chosen.get(orbit_id(base)) != base:
                return False
        return True

    orbits_by_dim: dict[int, list[tuple[Any, Any]]] = {}
    for n in range(space_top + 1):
        seen = set()
        level = []
        for key in space.nondeg(n):
            other = invol(key)
            if other == key or key in seen:
                continue
            seen.add(key)
            seen.add(other)
            level.append((key, other))
        orbits_by_dim[n] = level

    def solve(n: int, pending: list[tuple[Any, Any]]) -> bool:
        while True:
            if not pending:
                if n == space_top:
                    return True
                return solve(n + 1, list(orbits_by_dim[n + 1]))
            # propagate forced orbits before branching
            forced_index = None
            for idx, (a, b) in enumerate(pending):
                options = [x for x in (a, b) if consistent(n, x)]
                if not options:
                    return False
                if len(options) == 1:
                    forced_index = (idx, options[0])
                    break
            if forced_index is not None:
                idx, value = forced_index
                a, b = pending[idx]
                chosen[frozenset((a, b))] = value
                rest = pending[:idx] + pending[idx + 1 :]
                if solve(n, rest):
                    return True
                del chosen[frozenset((a, b))]
                return False
            a, b = pending[0]
            rest = pending[1:]
            for value in (a, b):
                chosen[frozenset((a, b))] = value
                if solve(n, rest):
                    return True
            del chosen[frozenset((a, b))]
            return False

    if not solve(0, list(orbits_by_dim[0])):
        return None
    members = {
        n: list(fixed_sets[n])
        + [v for orbit, v in chosen.items() if space.dim_of(v) == n]
        for n in range(space_top + 1)
    }
    return PointedSubset(space, members, check=True)


def section_map(
    orbit: FiniteSimplicialSet,
    space: FiniteSimplicialSet,
    section: PointedSubset,
    invol: Involution,
) -> SimplicialMap:
    """The simplicial map orbit space -> space induced by a section witness."""
    mapping: dict[int, dict[Any, SimplexRef]] = {}
    for n in range(orbit.top_dim() + 1):
        level = {}
        for key in orbit.nondeg(n):
            value = key if section.contains_key(n, key) else invol(key)
            level[key] = SimplexRef(n, value, ())
        mapping[n] = level
    return SimplicialMap(orbit, space, mapping)


# ---------------------------------------------------------------------------
# Images and diagonals.
# ---------------------------------------------------------------------------

def image_subset(f: SimplicialMap) -> PointedSubset:
    """Smallest pointed subset of the target containing the image of f."""
    target = f.target
    members: dict[int, set[Any]] = {0: {target.basepoint}}
    stack: list[SimplexRef] = []
    for n in range(min(f.source.top_dim(), f.source.truncation) + 1):
        for key in f.source.nondeg(n):
            stack.append(f.apply_key(n, key))
    while stack:
        ref = stack.pop()
        level = members.setdefault(ref.base_dim, set())
        if ref.base in level:
            continue
        level.add(ref.base)
        if ref.base_dim >= 1:
            base_ref = SimplexRef(ref.base_dim, ref.base, ())
            for i in range(ref.base_dim + 1):
                stack.append(target.face_of(base_ref, i))
    return PointedSubset(target, members, check=False)


def reduced_diagonal(space: SimplicialSet, truncation: Optional[int] = None) -> SimplicialMap:
    """The map x -> x ^ x into the 2-fold smash power."""
    target = smash_power(space, 2, truncation)
    mapping: dict[int, dict[Any, SimplexRef]] = {}
    for n in range(min(space.top_dim(), target.truncation) + 1):
        level = {}
        for key in space.nondeg(n):
            ref = SimplexRef(n, key, ())
            level[key] = target.canonical_ref((ref, ref))
        mapping[n] = level
    return SimplicialMap(space, target, mapping, check=False)
