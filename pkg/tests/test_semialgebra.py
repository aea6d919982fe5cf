"""Free-basis semialgebras: convolution, matrices, tensors, differences."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pargroupoid.group import make_group
from pargroupoid.groupoid import Gamma, StandardElement, StandardGroupoid
from pargroupoid.semialgebra import (
    AlgebraElement,
    BasisMismatchError,
    DeltaPair,
    GammaAlgebra,
    GroupAlgebra,
    MatrixAlgebra,
    StandardAlgebra,
    delta_extension,
    delta_extension_inverse,
    element_from_delta,
    element_from_json,
    element_to_delta,
    gamma_algebra_mul,
    identity_element,
    matrix_algebra_for,
    matrix_from_delta,
    matrix_to_delta,
    standard_to_matrix,
    tensor_phi,
    tensor_varphi,
)
from pargroupoid.semiring import (
    NAT,
    QNN,
    DeltaElement,
    SemiringPropertyError,
    delta_of,
)

Z3 = make_group("cyclic:3")
Z3_NAT = GammaAlgebra(Gamma(Z3), NAT)

# elements of the order-3 groupoid algebra with small natural coefficients
nat_elements = st.dictionaries(
    st.integers(0, Z3_NAT.size - 1), st.integers(0, 9), max_size=4,
).map(lambda d: AlgebraElement(Z3_NAT, d))


def _brute_product(alg: GammaAlgebra, x: AlgebraElement, y: AlgebraElement):
    # independent convolution: walk all basis pairs through the groupoid
    gamma = alg.gamma
    S = alg.scalars
    out: dict[int, object] = {}
    for i, a in x.coeffs.items():
        for j, b in y.coeffs.items():
            p = gamma.product(gamma.elements[i], gamma.elements[j])
            if p is None:
                continue
            k = alg.index[p]
            c = S.mul(a, b)
            out[k] = S.add(out[k], c) if k in out else c
    return AlgebraElement(alg, out)


@pytest.mark.parametrize("spec", ["cyclic:3", "klein4", "sym:3"])
def test_convolution_matches_brute_force(spec):
    alg = GammaAlgebra(Gamma(make_group(spec)), QNN)
    rng = random.Random(11)
    for _ in range(50):
        x = alg.random_element(rng, terms=4)
        y = alg.random_element(rng, terms=4)
        assert x * y == _brute_product(alg, x, y)


@given(nat_elements, nat_elements, nat_elements)
def test_algebra_laws(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x + y) * z == x * z + y * z
    assert x + y == y + x


@given(nat_elements)
def test_one_is_two_sided_identity(x):
    one = identity_element(Z3_NAT)
    assert one * x == x
    assert x * one == x
    assert (Z3_NAT.zero() * x).is_zero


def test_scale_commutes_with_product():
    alg = GammaAlgebra(Gamma(make_group("klein4")), QNN)
    rng = random.Random(3)
    c = Fraction(5, 7)
    for _ in range(20):
        x = alg.random_element(rng)
        y = alg.random_element(rng)
        assert x.scale(c) * y == (x * y).scale(c)


def test_subtraction_needs_negation():
    x = Z3_NAT.basis_element(Z3_NAT.basis[0])
    with pytest.raises(SemiringPropertyError):
        x - x
    d = element_to_delta(x)
    assert (d - d).is_zero


def test_equality_is_semantic_over_unreduced_pairs():
    dalg = Z3_NAT.with_scalars(delta_of(NAT))
    b = dalg.basis[2]
    x = dalg.element([(b, DeltaElement(5, 3))])
    y = dalg.element([(b, DeltaElement(2, 0))])
    assert x == y
    assert not x == dalg.element([(b, DeltaElement(3, 5))])


def test_scalar_family_is_shared():
    D = delta_of(NAT)
    there = Z3_NAT.with_scalars(D)
    back = there.with_scalars(NAT)
    assert back is Z3_NAT
    assert there is Z3_NAT.with_scalars(D)


def test_element_accumulates_duplicate_basis_keys():
    b = Z3_NAT.basis[1]
    x = Z3_NAT.element([(b, 2), (b, 3)])
    assert x.coeffs == {1: 5}


def test_cross_algebra_operations_rejected():
    other = GammaAlgebra(Gamma(make_group("cyclic:2")), NAT)
    with pytest.raises(BasisMismatchError):
        Z3_NAT.one() + other.one()
    group_alg = GroupAlgebra(Z3, NAT)
    with pytest.raises(BasisMismatchError):
        gamma_algebra_mul(group_alg.one(), group_alg.one())


def test_group_algebra_convolution_by_hand():
    alg = GroupAlgebra(Z3, NAT)
    x = alg.element([(0, 1), (1, 1)])  # e + a
    sq = x * x
    assert sq.coeffs == {0: 1, 1: 2, 2: 1}  # e + 2a + a^2


def test_standard_algebra_product_matches_groupoid():
    std = StandardAlgebra(StandardGroupoid(make_group("cyclic:2"), 2), NAT)
    g = std.groupoid
    for i, a in enumerate(std.basis):
        for j, b in enumerate(std.basis):
            p = g.product(a, b)
            k = std.basis_product(i, j)
            assert k == (None if p is None else std.index[p])


# ---------------------------------------------------------------------------
# Matrices and the triple-basis comparison.

def _matrix_oracle(X, Y):
    alg = X.algebra
    m = alg.m
    rows = []
    for r in range(m):
        row = []
        for c in range(m):
            acc = alg.entries.zero()
            for k in range(m):
                acc = acc + X.rows[r][k] * Y.rows[k][c]
            row.append(acc)
        rows.append(tuple(row))
    return alg.element(rows)


def test_matrix_units_multiply_like_matrix_units():
    alg = MatrixAlgebra(GroupAlgebra(Z3, QNN), 3)
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            for k in (1, 2, 3):
                for l in (1, 2, 3):
                    p = alg.matrix_unit(i, j) * alg.matrix_unit(k, l)
                    if j == k:
                        assert p == alg.matrix_unit(i, l)
                    else:
                        assert p.is_zero


def test_matrix_product_against_oracle():
    alg = MatrixAlgebra(GroupAlgebra(make_group("klein4"), QNN), 3)
    rng = random.Random(23)
    for _ in range(25):
        X = alg.random_element(rng)
        Y = alg.random_element(rng)
        assert X * Y == _matrix_oracle(X, Y)
        assert alg.one() * X == X and X * alg.one() == X


def test_matrix_entry_indexing_is_one_based():
    alg = MatrixAlgebra(GroupAlgebra(Z3, QNN), 2)
    X = alg.matrix_unit(1, 2)
    assert not X.entry(1, 2).is_zero
    assert X.entry(2, 1).is_zero
    with pytest.raises(ValueError):
        alg.matrix_unit(0, 1)


def test_standard_matrix_round_trip():
    std = StandardAlgebra(StandardGroupoid(Z3, 2), QNN)
    mat = matrix_algebra_for(std)
    rng = random.Random(5)
    for _ in range(100):
        x = std.random_element(rng, terms=5)
        assert tensor_varphi(standard_to_matrix(x, mat), std) == x
        X = mat.random_element(rng)
        assert standard_to_matrix(tensor_varphi(X, std), mat) == X


def test_expansion_agrees_with_pure_tensors_on_basis():
    # on the basis of pure tensors e_ij (x) h both maps must coincide; this
    # pins the linear extension as the unique one
    std = StandardAlgebra(StandardGroupoid(Z3, 2), QNN)
    mat = matrix_algebra_for(std)
    zero, one = QNN.zero, QNN.one
    for h in range(3):
        for i in (1, 2):
            for j in (1, 2):
                grid = [[one if (r, c) == (i, j) else zero for c in (1, 2)]
                        for r in (1, 2)]
                via_phi = tensor_phi(grid, mat.entries.basis_element(h), mat)
                via_basis = standard_to_matrix(
                    std.basis_element(StandardElement(h, i, j)), mat)
                assert via_phi == via_basis


def test_pure_tensor_products_factor():
    std = StandardAlgebra(StandardGroupoid(Z3, 2), QNN)
    mat = matrix_algebra_for(std)
    rng = random.Random(7)
    pool = QNN.values(8, seed=7)
    for _ in range(50):
        A = [[rng.choice(pool) for _ in range(2)] for _ in range(2)]
        B = [[rng.choice(pool) for _ in range(2)] for _ in range(2)]
        w = mat.entries.random_element(rng)
        v = mat.entries.random_element(rng)
        AB = [[sum((A[i][k] * B[k][j] for k in range(2)), QNN.zero)
               for j in range(2)] for i in range(2)]
        assert (tensor_phi(A, w, mat) * tensor_phi(B, v, mat)
                == tensor_phi(AB, w * v, mat))


def test_tensor_shape_validation():
    std = StandardAlgebra(StandardGroupoid(Z3, 2), QNN)
    mat = matrix_algebra_for(std)
    with pytest.raises(ValueError):
        tensor_phi([[QNN.one]], mat.entries.basis_element(0), mat)
    foreign = GroupAlgebra(make_group("cyclic:2"), QNN)
    with pytest.raises(BasisMismatchError):
        tensor_phi([[QNN.one] * 2] * 2, foreign.basis_element(0), mat)


# ---------------------------------------------------------------------------
# Crossing the ring-of-differences bridge.

def test_delta_pair_equality_is_cross_sum():
    a = Z3_NAT.basis_element(Z3_NAT.basis[0])
    b = Z3_NAT.basis_element(Z3_NAT.basis[1])
    # (a + b) - b equals a - 0
    assert DeltaPair(a + b, b) == DeltaPair(a, Z3_NAT.zero())
    assert not DeltaPair(a, b) == DeltaPair(b, a)


def test_delta_extension_round_trips_and_multiplies():
    dalg = Z3_NAT.with_scalars(delta_of(NAT))
    rng = random.Random(13)
    for _ in range(200):
        x = dalg.random_element(rng, terms=4)
        y = dalg.random_element(rng, terms=4)
        fx, fy = delta_extension(x), delta_extension(y)
        assert delta_extension_inverse(fx) == x
        assert delta_extension(x * y) == fx * fy
        assert delta_extension(x + y) == fx + fy
        p = DeltaPair(Z3_NAT.random_element(rng), Z3_NAT.random_element(rng))
        assert delta_extension(delta_extension_inverse(p)) == p


def test_delta_extension_requires_difference_scalars():
    with pytest.raises(SemiringPropertyError):
        delta_extension(Z3_NAT.one())


def test_membership_pullback_reports_witnesses():
    dalg = Z3_NAT.with_scalars(delta_of(NAT))
    good = element_to_delta(Z3_NAT.element([(Z3_NAT.basis[2], 4)]))
    back, failures = element_from_delta(good, Z3_NAT)
    assert failures == [] and back.coeffs == {2: 4}

    bad = dalg.element([(dalg.basis[4], DeltaElement(1, 3)),
                        (dalg.basis[1], DeltaElement(0, 2))])
    back, failures = element_from_delta(bad, Z3_NAT)
    assert back is None
    # witnesses come back in basis order
    assert [Z3_NAT.index[b] for b, _ in failures] == [1, 4]


def test_matrix_membership_pullback():
    mat = MatrixAlgebra(GroupAlgebra(Z3, NAT), 2)
    X = mat.matrix_unit(1, 2)
    lifted = matrix_to_delta(X)
    back, failures = matrix_from_delta(lifted, mat)
    assert failures == [] and back == X

    bad = lifted - matrix_to_delta(mat.matrix_unit(1, 2, mat.entries.element([(0, 2)])))
    back, failures = matrix_from_delta(bad, mat)
    assert back is None
    assert failures[0][0] == (0, 1, 2)  # entry h=e at row 1, col 2


# ---------------------------------------------------------------------------
# Serialization.

def test_json_round_trip_gamma_basis():
    alg = GammaAlgebra(Gamma(Z3), QNN)
    x = alg.element([(alg.basis[i], Fraction(i + 1, 3)) for i in (0, 4, 7)])
    doc = x.to_json()
    assert doc["basis"] == "gamma"
    assert element_from_json(alg, doc) == x


def test_json_round_trip_group_and_matrix_bases():
    galg = GroupAlgebra(Z3, QNN)
    x = galg.element([(0, Fraction(1, 2)), (2, Fraction(7))])
    assert element_from_json(galg, x.to_json()) == x

    std = StandardAlgebra(StandardGroupoid(Z3, 2), QNN)
    y = std.element([(std.basis[3], Fraction(2, 5))])
    doc = y.to_json()
    assert doc["basis"] == "matrix"
    assert element_from_json(std, doc) == y


def test_json_round_trip_over_differences():
    dalg = Z3_NAT.with_scalars(delta_of(NAT))
    x = dalg.element([(dalg.basis[0], DeltaElement(1, 3))])
    assert element_from_json(dalg, x.to_json()) == x


def test_json_rejects_wrong_basis_tag():
    alg = GammaAlgebra(Gamma(Z3), QNN)
    galg = GroupAlgebra(Z3, QNN)
    doc = galg.one().to_json()
    with pytest.raises(ValueError):
        element_from_json(alg, doc)


def test_matrix_to_json_sorts_terms():
    mat = MatrixAlgebra(GroupAlgebra(Z3, QNN), 2)
    X = mat.matrix_unit(2, 1) + mat.matrix_unit(1, 1)
    doc = X.to_json()
    assert doc["basis"] == "matrix"
    assert doc["terms"] == [{"b": [0, 1, 1], "c": "1"}, {"b": [0, 2, 1], "c": "1"}]
