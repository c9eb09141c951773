import numpy as np
import pytest

from equiline.action import (
    NotAProjector,
    NotASymmetry,
    action_certificate,
    close_permutations,
    compose,
    group_order,
    identity_perm,
    induced_permutation,
    invert,
    is_transitive,
    multiplicity_certificate,
    projector_commutant_dimension,
    scalar_kernel_check,
    two_transitivity,
)
from equiline.finfield import HyperplaneType
from equiline.heisenberg import commutant_dimension
from equiline.lineset import LineSet, construct_case_iii, construct_case_iv
from equiline.symmetries import symmetry_unitaries, translation_unitaries


def rand_perm(rng, n):
    return tuple(int(x) for x in rng.permutation(n))


def test_compose_and_invert():
    rng = np.random.default_rng(2)
    for _ in range(50):
        p = rand_perm(rng, 9)
        q = rand_perm(rng, 9)
        pq = compose(p, q)
        # composition applies q first
        assert all(pq[i] == p[q[i]] for i in range(9))
        assert compose(p, invert(p)) == identity_perm(9)
        assert compose(invert(p), p) == identity_perm(9)
        assert invert(pq) == compose(invert(q), invert(p))


def test_transitivity_predicates():
    rot = (1, 2, 3, 0)
    assert is_transitive([rot])
    assert not two_transitivity([rot])  # cyclic group is only 1-transitive
    s3 = [(1, 0, 2), (1, 2, 0)]
    assert two_transitivity(s3)  # symmetric group on 3 points
    assert not is_transitive([(0, 1, 3, 2)])


KNOWN_ORDERS = [
    # (generators, order)
    ([(1, 2, 3, 4, 5, 0), (1, 0, 2, 3, 4, 5)], 720),  # S_6
    ([(1, 2, 3, 4, 5, 6, 0), (1, 0, 2, 3, 4, 5, 6)], 5040),  # S_7
    ([tuple((i + 1) % 11 for i in range(11))], 11),  # C_11
    ([(1, 2, 3, 4, 0), (0, 4, 3, 2, 1)], 10),  # D_5
    ([(0, 1, 2)], 1),  # trivial
]


@pytest.mark.parametrize("gens,order", KNOWN_ORDERS)
def test_group_order_known_groups(gens, order):
    assert group_order(gens) == order
    assert len(close_permutations(gens)) == order


def test_group_order_matches_closure_on_random_subgroups():
    rng = np.random.default_rng(13)
    for _ in range(40):
        n = int(rng.integers(3, 9))
        gens = [rand_perm(rng, n) for _ in range(int(rng.integers(1, 4)))]
        assert group_order(gens) == len(close_permutations(gens))


def test_close_permutations_limit():
    gens = [(1, 2, 3, 4, 5, 0), (1, 0, 2, 3, 4, 5)]
    with pytest.raises(ValueError):
        close_permutations(gens, limit=100)


def test_induced_permutation_is_a_homomorphism():
    L = construct_case_iv(3, 1, HyperplaneType.MINUS)
    unis = translation_unitaries(L)
    perms = [induced_permutation(L, U) for U in unis]
    for U, pu in zip(unis, perms):
        for W, pw in zip(unis, perms):
            assert induced_permutation(L, U @ W) == compose(pu, pw)


def test_induced_permutation_rejects_non_symmetry():
    L = construct_case_iv(3, 1, HyperplaneType.MINUS)
    rng = np.random.default_rng(19)
    X = rng.normal(size=(L.d, L.d)) + 1j * rng.normal(size=(L.d, L.d))
    Q = np.linalg.qr(X)[0]
    with pytest.raises(NotASymmetry):
        induced_permutation(L, Q)


def test_action_certificate_on_translations():
    # translations act simply transitively: transitive, not 2-transitive, order n
    L = construct_case_iii(2, HyperplaneType.MINUS)
    cert = action_certificate(L, translation_unitaries(L))
    assert cert.transitive and not cert.two_transitive
    assert cert.group_order == L.n
    assert cert.matched_unitaries == 4


def test_action_certificate_full_symmetries():
    L = construct_case_iii(2, HyperplaneType.MINUS)
    cert = action_certificate(L, symmetry_unitaries(L))
    assert cert.transitive and cert.two_transitive
    assert cert.group_order == 11520
    assert cert.group_order % (L.n * (L.n - 1)) == 0


def test_action_certificate_requires_input():
    L = construct_case_iii(2, HyperplaneType.MINUS)
    with pytest.raises(ValueError):
        action_certificate(L, [])


def test_multiplicity_certificate_trivial_group():
    # averaging over the identity alone projects onto nothing useful: rank d
    L = construct_case_iv(3, 1, HyperplaneType.MINUS)
    cert = multiplicity_certificate(L, [np.eye(L.d, dtype=complex)], [1.0])
    assert cert.rank == L.d
    assert not cert.range_is_line0
    assert cert.idempotency_residual < 1e-12


def test_multiplicity_certificate_rejects_non_projector():
    L = construct_case_iv(3, 1, HyperplaneType.MINUS)
    rng = np.random.default_rng(29)
    X = rng.normal(size=(L.d, L.d)) + 1j * rng.normal(size=(L.d, L.d))
    Q = np.linalg.qr(X)[0]
    with pytest.raises(NotAProjector):
        multiplicity_certificate(L, [np.eye(L.d, dtype=complex), Q], [1.0, 1.0])
    with pytest.raises(ValueError):
        multiplicity_certificate(L, [np.eye(L.d)], [1.0, 1.0])


@pytest.mark.parametrize(
    "build",
    [
        lambda: construct_case_iv(3, 1, HyperplaneType.MINUS),
        lambda: construct_case_iv(3, 1, HyperplaneType.PLUS),
        lambda: construct_case_iii(2, HyperplaneType.MINUS),
        lambda: construct_case_iv(5, 1, HyperplaneType.MINUS),
    ],
)
def test_commutant_graph_count_matches_stacked_svd(build):
    L = build()
    projs = [
        np.outer(L.vectors[:, k], L.vectors[:, k].conj()) for k in range(L.n)
    ]
    assert projector_commutant_dimension(L.vectors) == commutant_dimension(projs) == 1


def test_commutant_block_structure():
    # two orthogonal spanning blocks -> two components -> dimension 2
    rng = np.random.default_rng(31)
    a = rng.normal(size=(2, 3)) + 1j * rng.normal(size=(2, 3))
    b = rng.normal(size=(3, 4)) + 1j * rng.normal(size=(3, 4))
    cols = []
    for k in range(3):
        v = np.zeros(5, dtype=complex)
        v[:2] = a[:, k] / np.linalg.norm(a[:, k])
        cols.append(v)
    for k in range(4):
        v = np.zeros(5, dtype=complex)
        v[2:] = b[:, k] / np.linalg.norm(b[:, k])
        cols.append(v)
    V = np.array(cols).T
    projs = [np.outer(v, v.conj()) for v in cols]
    assert projector_commutant_dimension(V) == commutant_dimension(projs) == 2


def test_commutant_non_spanning_falls_back():
    # one vector in C^2: projectors' commutant is the diagonals in its eigenbasis
    V = np.array([[1.0], [0.0]], dtype=complex)
    assert projector_commutant_dimension(V) == 2
    assert commutant_dimension([np.outer(V[:, 0], V[:, 0].conj())]) == 2


def test_scalar_kernel_check():
    assert scalar_kernel_check(construct_case_iv(3, 1, HyperplaneType.MINUS))
    assert scalar_kernel_check(construct_case_iii(2, HyperplaneType.PLUS))
    # standard basis: projectors commute with every diagonal, kernel not scalar
    assert not scalar_kernel_check(np.eye(4, dtype=complex))
