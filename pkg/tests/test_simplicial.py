"""The operator calculus, constructions and searches on simplicial sets."""

import random

import pytest

from loopbetti.constructions import (
    find_section,
    image_subset,
    orbit_space,
    product,
    quotient,
    reduced_diagonal,
    section_map,
    smash,
    smash_power,
    wedge_axes_subset,
)
from loopbetti.fixtures import (
    circle,
    free_double_cover,
    interval,
    point,
    sphere_pair_swap,
    trivial_circle,
    two_disc_sphere,
)
from loopbetti.homology import reduced_betti
from loopbetti.simplicial import (
    FiniteSimplicialSet,
    Involution,
    PointedSubset,
    SimplexRef,
    ValidationError,
    basepoint_subset,
    identity_map,
    constant_map,
    insert_degeneracy,
    whole_subset,
)


# ---------------------------------------------------------------------------
# Word calculus.
# ---------------------------------------------------------------------------

def test_degeneracy_cancellations():
    c = circle()
    v = c.simplex("*")
    s0v = c.degenerate_of(v, 0)
    assert c.face_of(s0v, 0) == v  # d0 s0 = id
    assert c.face_of(s0v, 1) == v  # d1 s0 = id


def test_face_commutes_past_degeneracy():
    c = circle()
    e = c.simplex("e")
    s1e = c.degenerate_of(e, 1)
    # d0 s1 = s0 d0, and d0 e is the basepoint
    assert c.face_of(s1e, 0) == SimplexRef(0, "*", (0,))


def test_double_degeneracy_normal_form():
    c = circle()
    v = c.simplex("*")
    s0v = c.degenerate_of(v, 0)
    s0s0v = c.degenerate_of(s0v, 0)
    # s0 s0 rewrites to s1 s0: the stored word is (0, 1)
    assert s0s0v == SimplexRef(0, "*", (0, 1))


def naive_normalize(ops):
    """Oracle: rewrite an operator list (outermost first) to normal form
    using s_i s_j -> s_{j+1} s_i for i <= j, by repeated scanning."""
    ops = list(ops)
    changed = True
    while changed:
        changed = False
        for k in range(len(ops) - 1):
            if ops[k] <= ops[k + 1]:
                ops[k], ops[k + 1] = ops[k + 1] + 1, ops[k]
                changed = True
    return tuple(reversed(ops))


def test_word_normalization_matches_naive_rewriting():
    rng = random.Random(7)
    for _ in range(300):
        length = rng.randint(0, 6)
        ops_applied = []  # innermost first
        dim = 0
        for _ in range(length):
            ops_applied.append(rng.randint(0, dim))
            dim += 1
        word = ()
        for j in ops_applied:
            word = insert_degeneracy(word, j)
        assert word == naive_normalize(list(reversed(ops_applied)))


def random_ref(rng, space, max_extra=3):
    dims = [n for n in range(space.top_dim() + 1) if space.nondeg(n)]
    p = rng.choice(dims)
    base = rng.choice(space.nondeg(p))
    ref = SimplexRef(p, base, ())
    for _ in range(rng.randint(0, max_extra)):
        ref = space.degenerate_of(ref, rng.randint(0, ref.dim))
    return ref


SPACES = [circle(), two_disc_sphere(), interval(), sphere_pair_swap()[0]]


def test_simplicial_identities_randomized():
    """All the operator identities, on random simplices of several spaces."""
    rng = random.Random(11)
    for _ in range(400):
        space = rng.choice(SPACES)
        r = random_ref(rng, space)
        n = r.dim
        # s_i s_j = s_{j+1} s_i for i <= j
        j = rng.randint(0, n)
        i = rng.randint(0, j)
        assert space.degenerate_of(space.degenerate_of(r, j), i) == \
            space.degenerate_of(space.degenerate_of(r, i), j + 1)
        # d_i d_j = d_{j-1} d_i for i < j
        if n >= 2:
            j = rng.randint(1, n)
            i = rng.randint(0, j - 1)
            assert space.face_of(space.face_of(r, j), i) == \
                space.face_of(space.face_of(r, i), j - 1)
        # d_i s_j family
        j = rng.randint(0, n)
        sj = space.degenerate_of(r, j)
        assert space.face_of(sj, j) == r
        assert space.face_of(sj, j + 1) == r
        if j >= 1 and n >= 1:
            i = rng.randint(0, j - 1)
            assert space.face_of(sj, i) == \
                space.degenerate_of(space.face_of(r, i), j - 1)
        if j + 1 < n + 1:
            i = rng.randint(j + 2, n + 1)
            assert space.face_of(sj, i) == \
                space.degenerate_of(space.face_of(r, i - 1), j)


def test_stored_face_tables_satisfy_identities():
    for space in SPACES:
        space.check_face_identities()


def test_face_index_out_of_range():
    c = circle()
    with pytest.raises(ValueError):
        c.face_of(c.simplex("e"), 2)
    with pytest.raises(ValueError):
        c.face_of(c.simplex("*"), 0)


def test_unknown_face_base_rejected():
    with pytest.raises(ValidationError):
        FiniteSimplicialSet(4, {0: ["*"], 1: ["e"]}, {"e": ["*", "ghost"]})


# ---------------------------------------------------------------------------
# Products and smashes.
# ---------------------------------------------------------------------------

def test_product_with_point_is_isomorphic():
    c = circle()
    pr = product(point(), c, truncation=6)
    assert [len(pr.nondeg(n)) for n in range(4)] == \
        [len(c.nondeg(n)) for n in range(4)]


def test_product_of_circles_has_two_shuffle_triangles():
    c = circle()
    pr = product(c, c, truncation=6)
    assert len(pr.nondeg(2)) == 2
    assert len(pr.nondeg(1)) == 3  # two edge-vertex mixes and the diagonal


def exhaustive_product_count(a, b, n):
    """Oracle: normalize every pair of dimension-n simplices and count the
    distinct nondegenerate results."""
    pr = product(a, b, truncation=n + 1)
    seen = set()
    for ra in a.refs_at(n):
        for rb in b.refs_at(n):
            ref = pr.canonical_ref((ra, rb))
            if not ref.word:
                seen.add(ref.base)
    return seen


def test_product_counts_match_exhaustive_enumeration():
    pairs = [(circle(), circle()), (circle(), two_disc_sphere())]
    for a, b in pairs:
        pr = product(a, b, truncation=5)
        for n in range(5):
            assert set(pr.nondeg(n)) == exhaustive_product_count(a, b, n)


def test_smash_of_point_is_point():
    sm = smash(point(), circle(), truncation=5)
    assert [len(sm.nondeg(n)) for n in range(3)] == [1, 0, 0]


def test_smash_power_one_matches_the_space():
    sp = two_disc_sphere()
    s1 = smash_power(sp, 1, truncation=6)
    assert [len(s1.nondeg(n)) for n in range(4)] == \
        [len(sp.nondeg(n)) for n in range(4)]
    assert reduced_betti(s1, 3).nonzero() == reduced_betti(sp, 3).nonzero()


def test_smash_equals_product_collapsed_by_axes():
    a, b = circle(), two_disc_sphere()
    pr = product(a, b, truncation=4)
    sm = smash(a, b, truncation=4)
    quot, _ = quotient(pr, wedge_axes_subset(pr))
    for n in range(1, 5):
        assert set(quot.nondeg(n)) == set(sm.nondeg(n))
    assert reduced_betti(quot, 3).nonzero() == reduced_betti(sm, 3).nonzero()


def test_smash_power_rejects_zero():
    with pytest.raises(ValidationError):
        smash_power(circle(), 0)


# ---------------------------------------------------------------------------
# Quotients.
# ---------------------------------------------------------------------------

def test_quotient_by_basepoint_is_identity():
    sp = two_disc_sphere()
    quot, _ = quotient(sp, basepoint_subset(sp))
    assert [len(quot.nondeg(n)) for n in range(3)] == \
        [len(sp.nondeg(n)) for n in range(3)]


def test_quotient_by_everything_is_point():
    sp = two_disc_sphere()
    quot, _ = quotient(sp, whole_subset(sp))
    assert [len(quot.nondeg(n)) for n in range(3)] == [1, 0, 0]


def test_subset_closure_validated():
    sp = two_disc_sphere()
    with pytest.raises(ValidationError):
        PointedSubset(sp, {2: ["g1"]})  # missing the edge below the disc


# ---------------------------------------------------------------------------
# Involutions, orbit spaces, sections.
# ---------------------------------------------------------------------------

def test_involution_must_square_to_identity():
    sp = two_disc_sphere()
    Involution(sp, {"g1": "g2", "g2": "g1"})  # a genuine swap is fine
    with pytest.raises(ValidationError):
        Involution(sp, {"g1": "g2"})  # g1 -> g2 -> g2 does not square to one


def test_involution_must_commute_with_faces():
    space, _ = free_double_cover()
    with pytest.raises(ValidationError):
        # swapping two vertices without moving the edges breaks d_i
        Involution(space, {"v0": "v1", "v1": "v0"})


def test_involution_applied_twice_is_identity():
    space, invol = sphere_pair_swap()
    for n in range(space.top_dim() + 1):
        for key in space.nondeg(n):
            assert invol(invol(key)) == key


def test_orbit_space_of_trivial_action_is_the_space():
    space, invol = trivial_circle()
    orbit, _, fixed = orbit_space(space, invol)
    assert [len(orbit.nondeg(n)) for n in range(2)] == [1, 1]
    assert fixed.counts() == {0: 1, 1: 1}


def test_orbit_space_of_glued_spheres(glued_spheres):
    orbit = glued_spheres["orbit"]
    fixed = glued_spheres["fixed"]
    sphere = two_disc_sphere()
    assert [len(orbit.nondeg(n)) for n in range(3)] == \
        [len(sphere.nondeg(n)) for n in range(3)]
    assert reduced_betti(orbit, 3).nonzero() == {2: 1}
    assert fixed.counts() == {0: 1, 1: 1}
    assert reduced_betti(fixed, 2).nonzero() == {1: 1}


def test_orbit_space_of_free_cover():
    space, invol = free_double_cover()
    orbit, _, fixed = orbit_space(space, invol)
    assert [len(orbit.nondeg(n)) for n in range(2)] == [3, 2]
    assert fixed.counts() == {0: 1}


def test_section_exists_for_glued_spheres(glued_spheres):
    space = glued_spheres["space"]
    invol = glued_spheres["invol"]
    orbit = glued_spheres["orbit"]
    projection = glued_spheres["projection"]
    section = find_section(space, invol)
    assert section is not None
    assert section.counts() == {0: 1, 1: 1, 2: 2}
    j = section_map(orbit, space, section, invol)
    composite = projection.compose(j)
    for n in range(orbit.top_dim() + 1):
        for key in orbit.nondeg(n):
            assert composite.apply_key(n, key) == SimplexRef(n, key, ())


def test_section_exists_for_trivial_action():
    space, invol = trivial_circle()
    section = find_section(space, invol)
    assert section is not None
    assert section.counts() == {0: 1, 1: 1}


def test_no_section_for_free_double_cover():
    space, invol = free_double_cover()
    assert find_section(space, invol) is None


# ---------------------------------------------------------------------------
# Images and diagonals.
# ---------------------------------------------------------------------------

def test_image_of_identity_is_everything():
    sp = two_disc_sphere()
    img = image_subset(identity_map(sp))
    assert img.counts() == {0: 1, 1: 1, 2: 2}


def test_image_of_constant_map_is_basepoint():
    img = image_subset(constant_map(circle(), two_disc_sphere()))
    assert img.counts() == {0: 1}


def test_image_of_circle_diagonal_is_the_diagonal_edge():
    c = circle()
    diag = reduced_diagonal(c, truncation=6)
    diag.check()
    img = image_subset(diag)
    counts = img.counts()
    assert counts == {0: 1, 1: 1}
    (edge,) = img.nondeg(1)
    assert edge == (SimplexRef(1, "e", ()), SimplexRef(1, "e", ()))
    # the image is a circle, as its homology confirms
    assert reduced_betti(img, 2).nonzero() == {1: 1}


def test_smash_functoriality_on_betti():
    c = circle()
    for a, b in [(1, 1), (1, 2), (2, 2), (1, 3)]:
        joined = smash_power(c, a + b, truncation=a + b + 1)
        split = smash(
            smash_power(c, a, truncation=a + b + 1),
            smash_power(c, b, truncation=a + b + 1),
            truncation=a + b + 1,
        )
        top = a + b
        assert reduced_betti(joined, top).through(top) == \
            reduced_betti(split, top).through(top)
