import random

import pytest

from lchoose.assignment import (
    AssignmentEnumerator,
    ColourPartition,
    ListAssignment,
    assignment_from_dict,
    assignment_to_dict,
    canonical_key,
    enumerate_lambda_assignments,
    is_lambda_assignment,
    quota_counts,
    trim_to_exact,
    vertex_group,
)
from lchoose.budget import Budget
from lchoose.graphs import MultipartiteGraph
from lchoose.lam import Lambda

from helpers import naive_orbit_keys, naive_witness_exists


def test_list_assignment_validation():
    ListAssignment(2, (1, 2))
    with pytest.raises(ValueError):
        ListAssignment(2, (1, 0))  # empty list
    with pytest.raises(ValueError):
        ListAssignment(1, (2,))  # colour outside the universe
    with pytest.raises(ValueError):
        ListAssignment(3, (1, 2))  # colour 2 unused
    with pytest.raises(ValueError):
        ListAssignment(0, ())


def test_from_lists_round_trip():
    la = ListAssignment.from_lists(4, [[0, 2], [1, 3], [2]])
    assert la.masks == (0b0101, 0b1010, 0b0100)
    assert la.colours(0) == (0, 2)
    assert la.lists() == ((0, 2), (1, 3), (2,))
    assert la.n == 3


def test_partition_validation():
    lam = Lambda((1, 2))
    ColourPartition(lam, (0, 1, 1))
    with pytest.raises(ValueError):
        ColourPartition(lam, (0, 2))
    assert ColourPartition(lam, (1, 0, 1)).class_mask(1) == 0b101
    assert ColourPartition(lam, (1, 0, 1)).class_masks() == (0b010, 0b101)


def test_quota_counts():
    lam = Lambda((1, 2))
    la = ListAssignment.from_lists(3, [[0, 1, 2], [0, 2]])
    part = ColourPartition(lam, (0, 1, 1))
    assert quota_counts(la, part) == [[1, 2], [1, 1]]


def random_assignment(rng, n, universe):
    """Nonempty random lists whose union is the whole universe."""
    full = (1 << universe) - 1
    while True:
        masks = [rng.randrange(1, full + 1) for _ in range(n)]
        union = 0
        for m in masks:
            union |= m
        if union == full:
            return ListAssignment(universe, tuple(masks))


def test_witness_search_matches_brute_force():
    rng = random.Random(2024)
    lams = [Lambda((1,)), Lambda((2,)), Lambda((1, 1)), Lambda((1, 2)), Lambda((3,))]
    for _ in range(400):
        n = rng.randint(1, 4)
        universe = rng.randint(1, 6)
        la = random_assignment(rng, n, universe)
        for lam in lams:
            got = is_lambda_assignment(la, lam)
            assert (got is not None) == naive_witness_exists(la, lam), (la, lam)
            if got is not None:
                counts = quota_counts(la, got)
                for v in range(n):
                    for i, k in enumerate(lam.parts):
                        assert counts[v][i] >= k


def test_witness_hand_cases():
    # the classic six-list shape admits no split into two singleton quotas
    la = ListAssignment.from_lists(
        4, [[0, 2], [0, 3], [1, 2], [1, 3], [0, 1], [2, 3]]
    )
    assert is_lambda_assignment(la, Lambda((2,))) is not None
    assert is_lambda_assignment(la, Lambda((1, 1))) is None
    wide = ListAssignment.from_lists(4, [[0, 1, 2, 3]] * 3)
    assert is_lambda_assignment(wide, Lambda((1, 3))) is not None
    assert is_lambda_assignment(wide, Lambda((1, 1, 1, 1))) is not None
    assert is_lambda_assignment(wide, Lambda((5,))) is None


def test_trim_to_exact_properties():
    rng = random.Random(77)
    from helpers import naive_colouring_exists
    from lchoose.graphs import part_vectors

    shapes = [
        MultipartiteGraph(sizes)
        for n in range(2, 5)
        for k in range(1, n + 1)
        for sizes in part_vectors(n, k)
    ]
    lam = Lambda((1, 1))
    checked = 0
    for _ in range(300):
        G = rng.choice(shapes)
        la = random_assignment(rng, G.n, rng.randint(2, 5))
        witness = is_lambda_assignment(la, lam)
        if witness is None:
            continue
        checked += 1
        trimmed, tpart = trim_to_exact(la, lam, witness)
        counts = quota_counts(trimmed, tpart)
        assert all(row == list(lam.parts) for row in counts)
        # shrinking lists cannot create colourings
        if naive_colouring_exists(G, trimmed):
            assert naive_colouring_exists(G, la)
    assert checked > 50


def test_trim_rejects_non_witness():
    lam = Lambda((2,))
    la = ListAssignment.from_lists(2, [[0], [1]])
    with pytest.raises(ValueError):
        trim_to_exact(la, lam, ColourPartition(lam, (0, 0)))


def test_vertex_group_orders():
    assert len(vertex_group((2, 2))) == 8  # 2! * 2! * 2!
    assert len(vertex_group((3, 1))) == 6
    assert len(vertex_group((2, 1, 1))) == 4
    perms = vertex_group((2, 2))
    assert tuple(range(4)) in perms
    with pytest.raises(ValueError):
        vertex_group((4, 4, 4, 4, 4))


def scramble(G, lam, la, part, rng):
    """Apply a random symmetry; the canonical key must not move."""
    # vertex permutation preserving parts and part sizes
    vperm = rng.choice(vertex_group(G.part_sizes))
    # colour permutation: shuffle within classes, swap equal-quota classes
    q = lam.size
    class_colours = [[c for c, ci in enumerate(part.class_of) if ci == i] for i in range(q)]
    order = list(range(q))
    by_quota = {}
    for i in order:
        by_quota.setdefault(lam.parts[i], []).append(i)
    cperm_target = {}
    for quota, idxs in by_quota.items():
        shuffled = idxs[:]
        rng.shuffle(shuffled)
        for a, b in zip(idxs, shuffled):
            cperm_target[a] = b
    cmap = {}
    for i in range(q):
        src = class_colours[i]
        dst = class_colours[cperm_target[i]][:]
        rng.shuffle(dst)
        for c_old, c_new in zip(src, dst):
            cmap[c_old] = c_new
    new_masks = [0] * la.n
    for v in range(la.n):
        m = 0
        for c in range(la.universe_size):
            if la.masks[v] >> c & 1:
                m |= 1 << cmap[c]
        new_masks[vperm[v]] = m
    new_class_of = [0] * la.universe_size
    for c in range(la.universe_size):
        new_class_of[cmap[c]] = part.class_of[c]
    return (
        ListAssignment(la.universe_size, tuple(new_masks)),
        ColourPartition(lam, tuple(new_class_of)),
    )


def test_canonical_key_invariant_under_symmetry():
    rng = random.Random(5)
    cells = [((2, 2), (2,)), ((2, 1), (1, 1)), ((3, 1), (2,)), ((1, 1, 1), (1, 1))]
    for sizes, parts in cells:
        G, lam = MultipartiteGraph(sizes), Lambda(parts)
        la, part = next(iter(AssignmentEnumerator(G, lam)))
        key = canonical_key(la, G, lam, part)
        for _ in range(25):
            la2, part2 = scramble(G, lam, la, part, rng)
            assert canonical_key(la2, G, lam, part2) == key


def test_canonical_key_rejects_inexact():
    G, lam = MultipartiteGraph((1, 1)), Lambda((1,))
    la = ListAssignment.from_lists(2, [[0, 1], [0]])
    with pytest.raises(ValueError):
        canonical_key(la, G, lam, ColourPartition(lam, (0, 0)))


# orbit counts pinned from the brute-force oracle
ORBIT_CELLS = [
    ((1, 1), (1,), 2),
    ((1, 1), (2,), 3),
    ((1, 1), (1, 1), 3),
    ((2, 1), (1,), 4),
    ((2, 1), (2,), 12),
    ((2, 1), (1, 1), 11),
    ((2, 2), (1,), 7),
    ((2, 2), (2,), 40),
    ((2, 2), (1, 1), 37),
    ((3, 1), (2,), 44),
    ((1, 1, 1), (1, 1), 7),
    ((2, 1, 1), (1, 1), 54),
]


@pytest.mark.parametrize("sizes,parts,count", ORBIT_CELLS)
def test_enumerator_hits_every_orbit_once(sizes, parts, count):
    G, lam = MultipartiteGraph(sizes), Lambda(parts)
    enum = AssignmentEnumerator(G, lam)
    keys = []
    for la, part in enum:
        counts = quota_counts(la, part)
        assert all(row == list(lam.parts) for row in counts)
        assert la.universe_size <= G.n * lam.total
        keys.append(canonical_key(la, G, lam, part))
    assert not enum.truncated
    assert len(keys) == len(set(keys)), "an orbit was produced twice"
    assert set(keys) == naive_orbit_keys(G, lam)
    assert len(keys) == count == enum.orbits_seen


def test_enumerator_budget_truncates():
    G, lam = MultipartiteGraph((2, 2)), Lambda((2,))
    enum = AssignmentEnumerator(G, lam, Budget(max_nodes=10))
    got = sum(1 for _ in enum)
    assert enum.truncated
    assert got < 40


def test_enumerate_wrapper():
    G, lam = MultipartiteGraph((2, 1)), Lambda((2,))
    enum = enumerate_lambda_assignments(G, lam)
    assert sum(1 for _ in enum) == 12
    assert not enum.truncated


def test_dict_round_trip():
    lam = Lambda((1, 2))
    la = ListAssignment.from_lists(3, [[0, 1, 2], [0, 1, 2]])
    part = ColourPartition(lam, (0, 1, 1))
    doc = assignment_to_dict(la, part)
    assert set(doc) == {"universe", "lists", "partition", "lambda"}
    assert doc == {
        "universe": 3,
        "lists": [[0, 1, 2], [0, 1, 2]],
        "partition": [0, 1, 1],
        "lambda": [1, 2],
    }
    la2, part2, lam2 = assignment_from_dict(doc)
    assert la2 == la and part2 == part and lam2 == lam

    bare = assignment_to_dict(la)
    assert bare["partition"] is None and bare["lambda"] is None
    la3, part3, lam3 = assignment_from_dict(bare)
    assert la3 == la and part3 is None and lam3 is None


@pytest.mark.parametrize(
    "doc",
    [
        {},
        {"universe": 2},
        {"universe": "2", "lists": [[0], [1]]},
        {"universe": 2, "lists": [[0], ["x"]]},
        {"universe": 2, "lists": [[0], [1]], "partition": [0]},
        {"universe": 2, "lists": [[0], [1]], "partition": [0, 0]},
        {"universe": 2, "lists": [[0], [1]], "lambda": 3},
        [1, 2],
    ],
)
def test_dict_rejects_malformed(doc):
    with pytest.raises(ValueError):
        assignment_from_dict(doc)
