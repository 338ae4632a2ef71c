import numpy as np
import pytest

from coring_lab import GF, QQ
from coring_lab.algebra import AlgebraMap, check_algebra_map, direct_product, matrix_algebra
from coring_lab.bimodule import (
    Bimodule,
    BimoduleMap,
    canonical_s_iso,
    dual_basis,
    endomorphism_algebra,
    hom_bimodule,
    left_dual,
    left_dual_basis,
    random_bimodule_iso,
    regular_bimodule,
    restrict_left,
    restrict_right,
    right_dual,
    tensor_over,
)
from coring_lab.errors import BimoduleAxiomError, FieldMismatchError

from conftest import (
    column_module,
    dual_numbers,
    field_algebra,
    point_module_over_dual_numbers,
    row_module,
    trivial_bimodule,
)

F2 = GF(2)
F3 = GF(3)


# ---------------------------------------------------------------- validation


def test_regular_bimodule_validates():
    regular_bimodule(matrix_algebra(2, F3)).validate()


def test_incompatible_action_is_rejected():
    k = field_algebra(F2)
    lam = F2.asarray([[[1, 0], [0, 1]]])
    rho = F2.zeros((2, 1, 2))
    rho[0, 0, 1] = 1  # e_0 . 1 = e_1 breaks the right unit law
    rho[1, 0, 0] = 1
    with pytest.raises(BimoduleAxiomError):
        Bimodule(k, k, lam, rho)


# ------------------------------------------------------------------- tensors


def test_tensor_of_fields_is_one_dimensional():
    m = trivial_bimodule(F2, 1)
    assert tensor_over(m, m).dim == 1


def test_tensor_over_dual_numbers_with_trivial_x_action():
    m = point_module_over_dual_numbers(F2)
    # view k as a right module over the dual numbers too: (k, B)-bimodule
    b = dual_numbers(F2)
    k = field_algebra(F2)
    rho = F2.zeros((1, 2, 1))
    rho[0, 0, 0] = 1
    lam = F2.zeros((1, 1, 1))
    lam[0, 0, 0] = 1
    right_point = Bimodule(k, b, lam, rho, name="k over (k, dual)")
    ts = tensor_over(right_point, m)
    assert ts.dim == 1


def test_rows_tensor_columns_over_matrix_algebra():
    rows, cols = row_module(F2), column_module(F2)
    ts = tensor_over(rows, cols)
    assert ts.dim == 1
    # balancing identifies e1* (x) e1 with e2* (x) e2
    e = F2.eye(2)
    assert np.array_equal(ts.pure(e[:, 0], e[:, 0]), ts.pure(e[:, 1], e[:, 1]))


def test_tensor_requires_matching_middle_algebra():
    with pytest.raises(FieldMismatchError):
        tensor_over(trivial_bimodule(F2, 2), point_module_over_dual_numbers(F2))


def test_tensor_balancing_holds_in_quotient(rng):
    m = regular_bimodule(matrix_algebra(2, F2))
    ts = tensor_over(m, m)
    for _ in range(10):
        u = F2.random(rng, 4)
        v = F2.random(rng, 4)
        a = F2.random(rng, 4)
        left = ts.pure(F2.matmul(m.act_right(a), u), v)
        right = ts.pure(u, F2.matmul(m.act_left(a), v))
        assert np.array_equal(left, right)


def test_tensor_functorial_on_pure_tensors(rng):
    m = trivial_bimodule(F3, 2)
    ts = tensor_over(m, m)
    f = BimoduleMap(m, m, F3.asarray([[1, 2], [0, 1]]))
    g = BimoduleMap(m, m, F3.asarray([[2, 0], [1, 1]]))
    induced = ts.induced_map(f.matrix.data, g.matrix.data, ts)
    for _ in range(10):
        u, v = F3.random(rng, 2), F3.random(rng, 2)
        lhs = F3.matmul(induced, ts.pure(u, v))
        rhs = ts.pure(f(u), g(v))
        assert np.array_equal(lhs, rhs)


# --------------------------------------------------------------------- duals


def test_right_dual_of_trivial_module():
    assert right_dual(trivial_bimodule(F2, 3)).dim == 3


def test_right_dual_of_rows_is_columns():
    rows = row_module(F2)
    dual = right_dual(rows)
    assert dual.dim == 2
    assert dual.left_alg == matrix_algebra(2, F2)
    assert dual.right_alg == field_algebra(F2)
    search = random_bimodule_iso(dual, column_module(F2), seed=1)
    assert search.found


def test_right_dual_over_dual_numbers_point():
    m = point_module_over_dual_numbers(F2)
    dual = right_dual(m)
    assert dual.dim == 1
    # x acts as zero on the right of the dual
    x = F2.asarray([0, 1])
    assert np.all(dual.act_right(x) == 0)


def test_left_dual_dimensions():
    assert left_dual(trivial_bimodule(F3, 2)).dim == 2
    m = point_module_over_dual_numbers(F2)
    ld = left_dual(m)
    assert ld.dim == 1
    # values of the surviving functional land in the span of x
    psi = ld.functional_mats[0]
    assert psi[0, 0] == 0 and psi[1, 0] == 1


def test_left_dual_of_regular_bimodule_has_full_dimension():
    b = dual_numbers(F2)
    assert left_dual(regular_bimodule(b)).dim == b.dim


# --------------------------------------------------------------- dual bases


def test_dual_basis_of_regular_module():
    a = matrix_algebra(2, F3)
    db = dual_basis(regular_bimodule(a))
    assert db is not None and db.verify()


def test_dual_basis_of_trivial_module_is_coordinatewise():
    db = dual_basis(trivial_bimodule(F2, 2))
    assert db is not None and db.verify()
    mats = db.functional_mats
    assert np.array_equal(mats[0], [[1, 0]])
    assert np.array_equal(mats[1], [[0, 1]])


def test_point_module_is_projective_over_the_field_side():
    db = dual_basis(point_module_over_dual_numbers(F2))
    assert db is not None and db.verify()


def test_point_module_is_not_projective_over_dual_numbers():
    assert left_dual_basis(point_module_over_dual_numbers(F2)) is None


def test_left_dual_basis_of_regular_module():
    db = left_dual_basis(regular_bimodule(dual_numbers(F3)))
    assert db is not None


# ------------------------------------------------------------- endomorphisms


def test_endomorphisms_of_trivial_module_are_full_matrix_algebra():
    end = endomorphism_algebra(trivial_bimodule(F2, 2))
    oracle = matrix_algebra(2, F2)
    # the deterministic kernel basis is the matrix units in row-major order,
    # so the structure constants agree entry for entry
    assert np.array_equal(end.algebra.structure, oracle.structure)
    assert np.array_equal(end.algebra.unit, oracle.unit)
    # scalar embedding of B = k
    assert end.b_to_s.matrix.data.shape == (4, 1)
    assert check_algebra_map(end.b_to_s)


def test_endomorphisms_of_regular_module():
    a = dual_numbers(F2)
    end = endomorphism_algebra(regular_bimodule(a))
    assert end.algebra.dim == a.dim


def test_endomorphisms_of_point_module_over_dual_numbers():
    m = point_module_over_dual_numbers(F2)
    end = endomorphism_algebra(m)
    assert end.algebra.dim == 1
    # B -> S is the quotient killing x
    assert end.b_to_s.matrix.data.tolist() == [[1, 0]]


def test_module_as_s_bimodule_validates():
    end = endomorphism_algebra(trivial_bimodule(F3, 2))
    end.module_as_s_bimodule.validate()


# ------------------------------------------------- canonical identification


def test_canonical_s_iso_trivial():
    iso = canonical_s_iso(trivial_bimodule(F2, 1))
    assert iso.to_endo.shape == (1, 1)
    assert iso.to_endo[0, 0] == 1


def test_canonical_s_iso_on_k2_round_trips_matrix_units():
    m = trivial_bimodule(F2, 2)
    iso = canonical_s_iso(m)
    s = iso.end.algebra
    f = m.field
    # E_ij corresponds to e_i (x) e_j*
    for i in range(2):
        for j in range(2):
            e = f.eye(2)
            t = iso.tensor.pure(e[:, i], dual_basis(m).functional_coords[j])
            endo = s.mat_of(f.matmul(iso.to_endo, t))
            expected = f.zeros((2, 2))
            expected[i, j] = 1
            assert np.array_equal(endo, expected)


def test_canonical_s_iso_product_rule_zero_case():
    # (e1 (x) e1*) (e2 (x) e2*) = e1 . e1*(e2) (x) e2* = 0
    m = trivial_bimodule(F2, 2)
    iso = canonical_s_iso(m)
    f = m.field
    db = dual_basis(m)
    t1 = iso.tensor.pure(f.eye(2)[:, 0], db.functional_coords[0])
    t2 = iso.tensor.pure(f.eye(2)[:, 1], db.functional_coords[1])
    s = iso.end.algebra
    product = s.mult(f.matmul(iso.to_endo, t1), f.matmul(iso.to_endo, t2))
    assert np.all(product == 0)


def test_canonical_iso_dimension_identity():
    for m in [trivial_bimodule(F2, 2), regular_bimodule(dual_numbers(F2)),
              point_module_over_dual_numbers(F2)]:
        db = dual_basis(m)
        if db is None:
            continue
        ts = tensor_over(m, db.dual)
        end = endomorphism_algebra(m)
        assert ts.dim == end.algebra.dim


# ----------------------------------------------------------------- hom & iso


def test_hom_of_fields():
    m = trivial_bimodule(F2, 1)
    assert len(hom_bimodule(m, m)) == 1


def test_hom_of_k2_is_all_linear_maps():
    m = trivial_bimodule(F2, 2)
    assert len(hom_bimodule(m, m)) == 4


def test_hom_from_quotient_to_dual_numbers():
    b = dual_numbers(F2)
    m = point_module_over_dual_numbers(F2)
    end = endomorphism_algebra(m)
    # S = F_2 viewed as a B-bimodule along B -> S
    s_reg = regular_bimodule(end.algebra)
    s_bb = restrict_left(restrict_right(s_reg, end.b_to_s), end.b_to_s)
    homs = hom_bimodule(s_bb, regular_bimodule(b))
    assert len(homs) == 1
    assert homs[0].matrix.data.tolist() == [[0], [1]]  # 1_S maps to x


def test_iso_identity_found_first():
    m = trivial_bimodule(F3, 3)
    search = random_bimodule_iso(m, m, seed=5)
    assert search.found
    assert np.array_equal(search.map.matrix.data, F3.eye(3))


def test_iso_duals_of_trivial_module():
    m = trivial_bimodule(F2, 2)
    search = random_bimodule_iso(right_dual(m), left_dual(m), seed=0)
    assert search.found


def test_iso_duals_of_point_module_by_enumeration():
    m = point_module_over_dual_numbers(F2)
    search = random_bimodule_iso(right_dual(m), left_dual(m), seed=0)
    assert search.found


def test_iso_exact_negative_for_different_idempotent_summands():
    kk = direct_product(field_algebra(F2), field_algebra(F2))
    k = field_algebra(F2)
    lam = F2.eye(1)[None, :, :]
    rho1 = F2.zeros((1, 2, 1))
    rho1[0, 0, 0] = 1  # e1 acts as 1, e2 as 0
    rho2 = F2.zeros((1, 2, 1))
    rho2[0, 1, 0] = 1
    p1 = Bimodule(k, kk, lam, rho1, name="P1")
    p2 = Bimodule(k, kk, lam, rho2, name="P2")
    assert random_bimodule_iso(p1, p2, seed=0).status == "none"
    assert random_bimodule_iso(p1, p1, seed=0).found


def test_iso_over_q_uses_random_attempts():
    m = trivial_bimodule(QQ, 2)
    assert random_bimodule_iso(m, m, seed=3).found


# -------------------------------------------------------------- restriction.


def test_restrict_left_along_quotient_map():
    b = dual_numbers(F2)
    k = field_algebra(F2)
    quotient = AlgebraMap(b, k, [[1, 0]])
    m = restrict_left(trivial_bimodule(F2, 2), quotient)
    assert m.left_alg == b
    m.validate()
