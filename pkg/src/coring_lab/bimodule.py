"""Bimodules over pairs of algebras: validated actions, maps, tensor
products over a middle algebra, one-sided duals, dual bases, endomorphism
algebras and randomized isomorphism search.

Action tensor conventions (all coordinates are column vectors):

* ``left_action[i, m, m']``  is the coefficient of e_m' in  b_i . e_m,
* ``right_action[m, j, m']`` is the coefficient of e_m' in  e_m . a_j.

Tensor products are presented quotients of the field tensor product; the
presentation fixes one section once and for all, so equality of tensors
is decided by comparing projected coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import Algebra, AlgebraMap, check_algebra_map
from .errors import (
    BimoduleAxiomError,
    DimensionMismatchError,
    FieldMismatchError,
    NotProjectiveError,
)
from .fields import Field
from .linalg import Mat, QuotientPresentation, _kernel, _solve

__all__ = [
    "Bimodule",
    "BimoduleMap",
    "TensorSpace",
    "DualModule",
    "DualBasis",
    "EndData",
    "IsoSearch",
    "regular_bimodule",
    "restrict_left",
    "restrict_right",
    "tensor_over",
    "right_dual",
    "left_dual",
    "dual_basis",
    "left_dual_basis",
    "endomorphism_algebra",
    "left_endomorphism_algebra",
    "canonical_s_iso",
    "hom_bimodule",
    "random_bimodule_iso",
]


class Bimodule:
    """A (B, A)-bimodule with machine-checked axioms."""

    def __init__(self, left_alg: Algebra, right_alg: Algebra, left_action, right_action,
                 name: str = "", _validate: bool = True):
        left_alg.field.check_same(right_alg.field)
        self.field = left_alg.field
        self.left_alg = left_alg
        self.right_alg = right_alg
        self.left_action = self.field.asarray(left_action)
        self.right_action = self.field.asarray(right_action)
        self.name = name
        if self.left_action.ndim != 3 or self.left_action.shape[0] != left_alg.dim:
            raise BimoduleAxiomError(f"left action tensor has shape {self.left_action.shape}")
        self.dim = self.left_action.shape[1]
        if self.left_action.shape != (left_alg.dim, self.dim, self.dim):
            raise BimoduleAxiomError(f"left action tensor has shape {self.left_action.shape}")
        if self.right_action.shape != (self.dim, right_alg.dim, self.dim):
            raise BimoduleAxiomError(f"right action tensor has shape {self.right_action.shape}")
        # per-basis action matrices: left_mats[i] @ v = b_i . v
        self.left_mats = [self.left_action[i].T.copy() for i in range(left_alg.dim)]
        self.right_mats = [self.right_action[:, j, :].T.copy() for j in range(right_alg.dim)]
        if _validate:
            self.validate()

    def act_left(self, x):
        """Matrix of v -> x . v for an element x of the left algebra."""
        return self.field.tensordot(self.field.asarray(x), self.left_action, ([0], [0])).T

    def act_right(self, y):
        """Matrix of v -> v . y for an element y of the right algebra."""
        return self.field.tensordot(self.field.asarray(y), self.right_action, ([0], [1])).T

    def validate(self) -> None:
        f = self.field
        lam, rho = self.left_action, self.right_action
        cb, ca = self.left_alg.structure, self.right_alg.structure

        lhs = f.tensordot(cb, lam, ([2], [0]))  # (bb')m, axes (i, j, m, m')
        rhs = f.tensordot(lam, lam, ([2], [1])).transpose(2, 0, 1, 3)  # b(b'm)
        if not Field.equal(lhs, rhs):
            i, j, m = (int(v) for v in np.argwhere(lhs != rhs)[0][:3])
            raise BimoduleAxiomError(f"left associativity fails at (b_{i}, b_{j}, e_{m})")

        lhs = f.tensordot(ca, rho, ([2], [1])).transpose(2, 0, 1, 3)  # m(aa'), axes (m, i, j, m')
        rhs = f.tensordot(rho, rho, ([2], [0]))  # (ma)a'
        if not Field.equal(lhs, rhs):
            m, i, j = (int(v) for v in np.argwhere(lhs != rhs)[0][:3])
            raise BimoduleAxiomError(f"right associativity fails at (e_{m}, a_{i}, a_{j})")

        eye = f.eye(self.dim)
        if not Field.equal(f.tensordot(self.left_alg.unit, lam, ([0], [0])), eye):
            raise BimoduleAxiomError("left unit does not act as the identity")
        if not Field.equal(f.tensordot(self.right_alg.unit, rho, ([0], [1])), eye):
            raise BimoduleAxiomError("right unit does not act as the identity")

        lhs = f.tensordot(lam, rho, ([2], [0]))  # (bm)a, axes (i, m, j, m')
        rhs = f.tensordot(rho, lam, ([2], [1])).transpose(2, 0, 1, 3)  # b(ma)
        if not Field.equal(lhs, rhs):
            i, m, j = (int(v) for v in np.argwhere(lhs != rhs)[0][:3])
            raise BimoduleAxiomError(f"action compatibility fails at (b_{i}, e_{m}, a_{j})")

    def __repr__(self):
        label = self.name or "Bimodule"
        return f"{label}(dim={self.dim}, left={self.left_alg!r}, right={self.right_alg!r})"


def regular_bimodule(a: Algebra) -> Bimodule:
    """The algebra acting on itself from both sides."""
    return Bimodule(a, a, a.structure, a.structure, name=f"{a.name or 'A'}-regular",
                    _validate=False)


def restrict_left(m: Bimodule, f: AlgebraMap) -> Bimodule:
    """Pull the left action back along an algebra map into the left algebra."""
    if f.target != m.left_alg:
        raise FieldMismatchError("map target is not the left algebra of the module")
    if not check_algebra_map(f):
        raise BimoduleAxiomError("restriction along a non-multiplicative map")
    lam = m.field.tensordot(f.matrix.data, m.left_action, ([0], [0]))
    return Bimodule(f.source, m.right_alg, lam, m.right_action, name=m.name)


def restrict_right(m: Bimodule, f: AlgebraMap) -> Bimodule:
    """Pull the right action back along an algebra map into the right algebra."""
    if f.target != m.right_alg:
        raise FieldMismatchError("map target is not the right algebra of the module")
    if not check_algebra_map(f):
        raise BimoduleAxiomError("restriction along a non-multiplicative map")
    rho = m.field.tensordot(f.matrix.data, m.right_action, ([0], [1])).transpose(1, 0, 2)
    return Bimodule(m.left_alg, f.source, m.left_action, rho, name=m.name)


class BimoduleMap:
    """A two-sided linear map between bimodules over the same algebra pair."""

    def __init__(self, source: Bimodule, target: Bimodule, matrix, _validate: bool = True):
        if source.left_alg != target.left_alg or source.right_alg != target.right_alg:
            raise FieldMismatchError("bimodule map requires matching algebras on both sides")
        self.source = source
        self.target = target
        self.field = source.field
        self.matrix = matrix if isinstance(matrix, Mat) else Mat(self.field, matrix)
        if self.matrix.data.shape != (target.dim, source.dim):
            raise DimensionMismatchError(
                f"matrix shape {self.matrix.data.shape}, expected {(target.dim, source.dim)}")
        if _validate and not self.commutes_with_actions():
            raise BimoduleAxiomError("matrix does not commute with the bimodule actions")

    def commutes_with_actions(self) -> bool:
        f, mat = self.field, self.matrix.data
        for i in range(self.source.left_alg.dim):
            if not Field.equal(f.matmul(mat, self.source.left_mats[i]),
                               f.matmul(self.target.left_mats[i], mat)):
                return False
        for j in range(self.source.right_alg.dim):
            if not Field.equal(f.matmul(mat, self.source.right_mats[j]),
                               f.matmul(self.target.right_mats[j], mat)):
                return False
        return True

    def __call__(self, v):
        return self.field.matmul(self.matrix.data, self.field.asarray(v))

    def is_invertible(self) -> bool:
        if self.source.dim != self.target.dim:
            return False
        return _solve(self.field, self.matrix.data, self.field.eye(self.source.dim)) is not None

    def inverse(self) -> "BimoduleMap":
        inv = _solve(self.field, self.matrix.data, self.field.eye(self.target.dim))
        if inv is None:
            raise DimensionMismatchError("map is not invertible")
        return BimoduleMap(self.target, self.source, inv, _validate=False)

    def __repr__(self):
        return f"BimoduleMap({self.source!r} -> {self.target!r})"


@dataclass
class TensorSpace:
    """The tensor product of two bimodules over their shared middle algebra."""

    left_factor: Bimodule
    right_factor: Bimodule
    middle: Algebra
    presentation: QuotientPresentation
    space: Bimodule

    @property
    def dim(self) -> int:
        return self.presentation.quotient_dim

    @property
    def projection(self):
        return self.presentation.projection

    @property
    def section(self):
        return self.presentation.section

    def pure(self, u, v):
        """Quotient coordinates of the pure tensor u (x) v."""
        f = self.left_factor.field
        return f.matmul(self.projection, f.kron(f.asarray(u), f.asarray(v)))

    def lift(self, t):
        """A representative of t in the field tensor product, shaped (dimM, dimN)."""
        f = self.left_factor.field
        amb = f.matmul(self.section, f.asarray(t))
        return amb.reshape(self.left_factor.dim, self.right_factor.dim)

    def induced_map(self, f_mat, g_mat, target: "TensorSpace"):
        """Matrix of f (x) g between presented tensor products."""
        fld = self.left_factor.field
        big = fld.kron(fld.asarray(f_mat), fld.asarray(g_mat))
        return fld.matmul(target.projection, fld.matmul(big, self.section))


def _balancing_relations(m: Bimodule, n: Bimodule):
    """Rows spanning m.c (x) n - m (x) c.n over the middle algebra."""
    f = m.field
    dm, dc, dn = m.dim, m.right_alg.dim, n.dim
    eye_m, eye_n = f.eye(dm), f.eye(dn)
    r1 = m.right_action[:, :, None, :, None] * eye_n[None, None, :, None, :]
    r2 = eye_m[:, None, None, :, None] * n.left_action[None, :, :, None, :]
    rels = f.asarray(r1 - r2).reshape(dm * dc * dn, dm * dn)
    return rels


def tensor_over(m: Bimodule, n: Bimodule, validate_actions: bool = True) -> TensorSpace:
    """Present M (x)_C N for C = m.right_alg = n.left_alg."""
    if m.right_alg != n.left_alg:
        raise FieldMismatchError("middle algebra mismatch in tensor product")
    f = m.field
    ambient = m.dim * n.dim
    if m.right_alg.dim == 1:
        # the middle algebra is the base field, the tensor product is free
        pres = QuotientPresentation.trivial(f, ambient)
    else:
        pres = QuotientPresentation.from_relations(f, ambient, _balancing_relations(m, n))
    proj, sect = pres.projection, pres.section
    q = pres.quotient_dim
    lam = f.zeros((m.left_alg.dim, q, q))
    for i in range(m.left_alg.dim):
        big = f.kron(m.left_mats[i], f.eye(n.dim))
        lam[i] = f.matmul(proj, f.matmul(big, sect)).T
        if validate_actions and not pres.is_trivial:
            if not pres.reduces_to_zero(f.matmul(big, pres.relation_basis.T)):
                raise BimoduleAxiomError(f"left action does not descend at basis {i}")
    rho = f.zeros((q, n.right_alg.dim, q))
    for j in range(n.right_alg.dim):
        big = f.kron(f.eye(m.dim), n.right_mats[j])
        rho[:, j, :] = f.matmul(proj, f.matmul(big, sect)).T
        if validate_actions and not pres.is_trivial:
            if not pres.reduces_to_zero(f.matmul(big, pres.relation_basis.T)):
                raise BimoduleAxiomError(f"right action does not descend at basis {j}")
    space = Bimodule(m.left_alg, n.right_alg, lam, rho,
                     name=f"{m.name or 'M'}(x){n.name or 'N'}")
    return TensorSpace(m, n, m.right_alg, pres, space)


class DualModule(Bimodule):
    """A one-sided dual, carrying the functional matrices of its basis."""

    def __init__(self, left_alg, right_alg, left_action, right_action, base_module,
                 functional_mats, name=""):
        super().__init__(left_alg, right_alg, left_action, right_action, name=name)
        self.base_module = base_module
        self.functional_mats = functional_mats  # list of (value_dim x module_dim) arrays

    def mat_of(self, coords):
        """The functional matrix of an element given by coordinates."""
        f = self.field
        coords = f.asarray(coords)
        out = f.zeros(self.functional_mats[0].shape) if self.functional_mats else f.zeros((0, 0))
        for c, phi in zip(coords, self.functional_mats):
            out = out + c * phi
        return f.asarray(out)

    def apply(self, coords, vec):
        """Evaluate the functional with given coordinates on a module vector."""
        return self.field.matmul(self.mat_of(coords), self.field.asarray(vec))


def _matrix_subspace_coords(field: Field, basis_mats, targets):
    """Coordinates of each target matrix in the span of basis_mats.

    targets is a list of matrices; raises if any target leaves the span.
    """
    if not basis_mats:
        if any(np.any(field.asarray(t) != 0) for t in targets):
            raise BimoduleAxiomError("matrix outside the empty span")
        return [field.zeros(0) for _ in targets]
    base = np.stack([field.asarray(b).reshape(-1) for b in basis_mats], axis=1)
    rhs = np.stack([field.asarray(t).reshape(-1) for t in targets], axis=1)
    sol = _solve(field, field.asarray(base), rhs)
    if sol is None:
        raise BimoduleAxiomError("matrix left the expected subspace; conventions violated")
    return [sol[:, i] for i in range(sol.shape[1])]


def right_dual(m: Bimodule) -> DualModule:
    """Hom over the right algebra into it, as an (A, B)-bimodule.

    Elements are right-A-linear maps M -> A; actions (a.phi.b)(x) = a.phi(b.x).
    """
    f = m.field
    a_alg, b_alg = m.right_alg, m.left_alg
    da, dm = a_alg.dim, m.dim
    rows = []
    for j in range(a_alg.dim):
        rows.append(f.kron(f.eye(da), m.right_mats[j].T) - f.kron(a_alg.right_mult[j], f.eye(dm)))
    mats = [v.reshape(da, dm) for v in _kernel(f, np.concatenate(rows, axis=0))]
    t = len(mats)
    lam = f.zeros((da, t, t))
    rho = f.zeros((t, b_alg.dim, t))
    if t:
        left_imgs = [[f.matmul(a_alg.left_mult[i], phi) for phi in mats] for i in range(da)]
        for i in range(da):
            for alpha, coords in enumerate(_matrix_subspace_coords(f, mats, left_imgs[i])):
                lam[i, alpha] = coords
        for j in range(b_alg.dim):
            imgs = [f.matmul(phi, m.left_mats[j]) for phi in mats]
            for alpha, coords in enumerate(_matrix_subspace_coords(f, mats, imgs)):
                rho[alpha, j] = coords
    return DualModule(a_alg, b_alg, lam, rho, m, mats, name=f"{m.name or 'M'}^*")


def left_dual(m: Bimodule) -> DualModule:
    """Hom over the left algebra into it, as an (A, B)-bimodule.

    Elements are left-B-linear maps M -> B; actions (a.psi.b)(x) = psi(x.a).b.
    """
    f = m.field
    a_alg, b_alg = m.right_alg, m.left_alg
    db, dm = b_alg.dim, m.dim
    rows = []
    for i in range(b_alg.dim):
        rows.append(f.kron(f.eye(db), m.left_mats[i].T) - f.kron(b_alg.left_mult[i], f.eye(dm)))
    mats = [v.reshape(db, dm) for v in _kernel(f, np.concatenate(rows, axis=0))]
    t = len(mats)
    lam = f.zeros((a_alg.dim, t, t))
    rho = f.zeros((t, db, t))
    if t:
        for i in range(a_alg.dim):
            imgs = [f.matmul(psi, m.right_mats[i]) for psi in mats]
            for alpha, coords in enumerate(_matrix_subspace_coords(f, mats, imgs)):
                lam[i, alpha] = coords
        for j in range(db):
            imgs = [f.matmul(b_alg.right_mult[j], psi) for psi in mats]
            for alpha, coords in enumerate(_matrix_subspace_coords(f, mats, imgs)):
                rho[alpha, j] = coords
    return DualModule(a_alg, b_alg, lam, rho, m, mats, name=f"*{m.name or 'M'}")


def _right_scaling_matrix(m: Bimodule, e, phi):
    """Matrix of x -> e . phi(x) for e in M and phi given as a value matrix."""
    f = m.field
    # e . w for w in the right algebra: sum_a w_a (e . a), contract e first
    act = f.tensordot(f.asarray(e), m.right_action, ([0], [0]))  # (a, m')
    return f.matmul(act.T, f.asarray(phi))


def _left_scaling_matrix(m: Bimodule, psi, e):
    """Matrix of x -> psi(x) . e for psi a value matrix into the left algebra."""
    f = m.field
    act = f.tensordot(f.asarray(e), m.left_action, ([0], [1]))  # (b, m')
    return f.matmul(act.T, f.asarray(psi))


@dataclass
class DualBasis:
    """Vectors e_i with functionals phi_i witnessing x = sum e_i . phi_i(x)."""

    module: Bimodule
    dual: DualModule
    elements: list
    functional_coords: list

    @property
    def functional_mats(self):
        return [self.dual.mat_of(c) for c in self.functional_coords]

    def verify(self) -> bool:
        f = self.module.field
        total = f.zeros((self.module.dim, self.module.dim))
        for e, phi in zip(self.elements, self.functional_mats):
            total = total + _right_scaling_matrix(self.module, e, phi)
        return Field.equal(f.asarray(total), f.eye(self.module.dim))


def dual_basis(m: Bimodule, dual: DualModule | None = None):
    """Solve for a dual basis on the field basis of M; None when M is not
    finitely generated projective over the right algebra."""
    f = m.field
    if dual is None:
        dual = right_dual(m)
    t = len(dual.functional_mats)
    dm = m.dim
    if t == 0:
        return None if dm else DualBasis(m, dual, [], [])
    # G[i, alpha, j, m'] = sum_a Phi_alpha[a, j] rho[i, a, m']
    phis = np.stack([f.asarray(p) for p in dual.functional_mats])
    g = f.tensordot(phis, m.right_action, ([1], [1])).transpose(2, 0, 1, 3)
    system = g.reshape(dm * t, dm * dm).T
    rhs = f.eye(dm).reshape(-1)
    sol = _solve(f, f.asarray(system), rhs)
    if sol is None:
        return None
    coords = sol.reshape(dm, t)
    eye = f.eye(dm)
    return DualBasis(m, dual, [eye[:, i] for i in range(dm)],
                     [coords[i] for i in range(dm)])


def left_dual_basis(m: Bimodule, dual: DualModule | None = None):
    """Left-side mirror: psi_i with x = sum psi_i(x) . e_i, or None."""
    f = m.field
    if dual is None:
        dual = left_dual(m)
    t = len(dual.functional_mats)
    dm = m.dim
    if t == 0:
        return None if dm else DualBasis(m, dual, [], [])
    # G[i, alpha, j, m'] = sum_b Psi_alpha[b, j] lambda[b, i, m']
    psis = np.stack([f.asarray(p) for p in dual.functional_mats])
    g = f.tensordot(psis, m.left_action, ([1], [0])).transpose(2, 0, 1, 3)
    system = g.reshape(dm * t, dm * dm).T
    rhs = f.eye(dm).reshape(-1)
    sol = _solve(f, f.asarray(system), rhs)
    if sol is None:
        return None
    coords = sol.reshape(dm, t)
    eye = f.eye(dm)
    return DualBasis(m, dual, [eye[:, i] for i in range(dm)],
                     [coords[i] for i in range(dm)])


class EndAlgebra(Algebra):
    """Endomorphism algebra with a remembered matrix basis."""

    def __init__(self, field, structure, unit, endo_mats, module, name=""):
        super().__init__(field, structure, unit, name=name)
        self.endo_mats = endo_mats
        self.module = module

    def coords_of(self, endo_mat):
        return _matrix_subspace_coords(self.field, self.endo_mats, [endo_mat])[0]

    def mat_of(self, coords):
        f = self.field
        out = f.zeros(self.endo_mats[0].shape)
        for c, s in zip(f.asarray(coords), self.endo_mats):
            out = out + c * s
        return f.asarray(out)


@dataclass
class EndData:
    """Right endomorphism ring S of a bimodule plus its canonical maps."""

    algebra: EndAlgebra
    b_to_s: AlgebraMap
    module_as_s_bimodule: Bimodule


def _end_algebra_from_mats(field, mats, module, composition, name):
    n = len(mats)
    if n == 0:
        raise BimoduleAxiomError("endomorphism space is empty; module has dimension problems")
    structure = field.zeros((n, n, n))
    products = []
    for i in range(n):
        for j in range(n):
            products.append(composition(mats[i], mats[j]))
    for (i, j), coords in zip(itertools.product(range(n), range(n)),
                              _matrix_subspace_coords(field, mats, products)):
        structure[i, j] = coords
    unit = _matrix_subspace_coords(field, mats, [field.eye(module.dim)])[0]
    return EndAlgebra(field, structure, unit, mats, module, name=name)


def endomorphism_algebra(m: Bimodule) -> EndData:
    """S = End over the right algebra, composition product, plus B -> S and
    the (S, A)-bimodule structure on M."""
    f = m.field
    dm = m.dim
    rows = []
    for j in range(m.right_alg.dim):
        rows.append(f.kron(f.eye(dm), m.right_mats[j].T) - f.kron(m.right_mats[j], f.eye(dm)))
    mats = [v.reshape(dm, dm) for v in _kernel(f, np.concatenate(rows, axis=0))]
    s_alg = _end_algebra_from_mats(f, mats, m, lambda a, b: f.matmul(a, b),
                                   name=f"End({m.name or 'M'})")
    b_cols = _matrix_subspace_coords(f, mats, [m.left_mats[i] for i in range(m.left_alg.dim)])
    b_to_s = AlgebraMap(m.left_alg, s_alg, np.stack(b_cols, axis=1) if b_cols else
                        f.zeros((len(mats), 0)))
    if not check_algebra_map(b_to_s):
        raise BimoduleAxiomError("left action does not give an algebra map into End")
    lam = f.zeros((len(mats), dm, dm))
    for beta, s in enumerate(mats):
        lam[beta] = s.T
    m_sa = Bimodule(s_alg, m.right_alg, lam, m.right_action, name=f"{m.name or 'M'} as (S,A)")
    return EndData(s_alg, b_to_s, m_sa)


def left_endomorphism_algebra(m: Bimodule) -> EndAlgebra:
    """End over the left algebra with the opposite-composition product."""
    f = m.field
    dm = m.dim
    rows = []
    for i in range(m.left_alg.dim):
        rows.append(f.kron(f.eye(dm), m.left_mats[i].T) - f.kron(m.left_mats[i], f.eye(dm)))
    mats = [v.reshape(dm, dm) for v in _kernel(f, np.concatenate(rows, axis=0))]
    return _end_algebra_from_mats(f, mats, m, lambda a, b: f.matmul(b, a),
                                  name=f"End_left({m.name or 'M'})")


def hom_bimodule(m: Bimodule, n: Bimodule) -> list[BimoduleMap]:
    """Basis of the space of bimodule maps m -> n."""
    if m.left_alg != n.left_alg or m.right_alg != n.right_alg:
        raise FieldMismatchError("hom requires the same algebras on both sides")
    f = m.field
    rows = []
    for i in range(m.left_alg.dim):
        rows.append(f.kron(f.eye(n.dim), m.left_mats[i].T) - f.kron(n.left_mats[i], f.eye(m.dim)))
    for j in range(m.right_alg.dim):
        rows.append(f.kron(f.eye(n.dim), m.right_mats[j].T) - f.kron(n.right_mats[j], f.eye(m.dim)))
    kernel = _kernel(f, np.concatenate(rows, axis=0))
    return [BimoduleMap(m, n, v.reshape(n.dim, m.dim), _validate=False) for v in kernel]


def one_sided_hom(m: Bimodule, n: Bimodule, side: str) -> list:
    """Basis matrices of maps linear over one side only ('left' or 'right')."""
    f = m.field
    rows = []
    if side == "right":
        if m.right_alg != n.right_alg:
            raise FieldMismatchError("right algebras differ")
        for j in range(m.right_alg.dim):
            rows.append(f.kron(f.eye(n.dim), m.right_mats[j].T)
                        - f.kron(n.right_mats[j], f.eye(m.dim)))
    elif side == "left":
        if m.left_alg != n.left_alg:
            raise FieldMismatchError("left algebras differ")
        for i in range(m.left_alg.dim):
            rows.append(f.kron(f.eye(n.dim), m.left_mats[i].T)
                        - f.kron(n.left_mats[i], f.eye(m.dim)))
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return [v.reshape(n.dim, m.dim) for v in _kernel(f, np.concatenate(rows, axis=0))]


@dataclass
class IsoSearch:
    """Outcome of an isomorphism search: found / none / inconclusive.

    'none' is an exact negative (dimension mismatch, empty hom space, or an
    exhausted finite enumeration); 'inconclusive' only means not found.
    """

    status: str
    map: BimoduleMap | None = None

    @property
    def found(self) -> bool:
        return self.status == "found"


def random_bimodule_iso(m: Bimodule, n: Bimodule, seed: int = 0, attempts: int = 32,
                        budget: int = 2**20) -> IsoSearch:
    """Search for an invertible bimodule map m -> n.

    Identity first, then exhaustive enumeration over a small finite hom
    space (exact negative), then seeded random combinations.
    """
    f = m.field
    if m.dim != n.dim:
        return IsoSearch("none")
    if m.dim == 0:
        return IsoSearch("found", BimoduleMap(m, n, f.zeros((0, 0)), _validate=False))
    homs = hom_bimodule(m, n)
    if not homs:
        return IsoSearch("none")
    stack = np.stack([h.matrix.data for h in homs])
    h = len(homs)

    def attempt(mat):
        if _solve(f, mat, f.eye(m.dim)) is not None:
            return BimoduleMap(m, n, mat, _validate=False)
        return None

    try:
        _matrix_subspace_coords(f, [s for s in stack], [f.eye(m.dim)])
        candidate = attempt(f.eye(m.dim))
        if candidate is not None:
            return IsoSearch("found", candidate)
    except BimoduleAxiomError:
        pass

    p = f.characteristic
    if p and p**h <= budget:
        for coeffs in itertools.product(range(p), repeat=h):
            if not any(coeffs):
                continue
            mat = f.tensordot(f.asarray(list(coeffs)), stack, ([0], [0]))
            candidate = attempt(mat)
            if candidate is not None:
                return IsoSearch("found", candidate)
        return IsoSearch("none")

    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        coeffs = f.random(rng, h)
        mat = f.tensordot(coeffs, stack, ([0], [0]))
        candidate = attempt(mat)
        if candidate is not None:
            return IsoSearch("found", candidate)
    return IsoSearch("inconclusive")


@dataclass
class SIso:
    """The mutually inverse maps between M (x)_A M^* and End_A(M)."""

    tensor: TensorSpace
    end: EndData
    to_endo: np.ndarray  # tensor coords -> S coords
    from_endo: np.ndarray  # S coords -> tensor coords


def canonical_s_iso(m: Bimodule, db: DualBasis | None = None,
                    end: EndData | None = None) -> SIso:
    """Identify M (x)_A M^* with S through m (x) phi -> (x -> m.phi(x)).

    Verifies that both composites are identities and that the three
    product rules relating the identification to S's ring structure hold.
    """
    f = m.field
    if db is None:
        db = dual_basis(m)
    if db is None:
        raise NotProjectiveError("module admits no dual basis over its right algebra")
    dual = db.dual
    if end is None:
        end = endomorphism_algebra(m)
    s_alg = end.algebra
    ts = tensor_over(m, dual)
    t_amb = m.dim * len(dual.functional_mats)

    # forward on the ambient: pair (m_i, phi_alpha) -> endo x -> e_i . phi_alpha(x)
    endos = []
    for i in range(m.dim):
        for alpha, phi in enumerate(dual.functional_mats):
            eye = f.eye(m.dim)
            endos.append(_right_scaling_matrix(m, eye[:, i], phi))
    cols = _matrix_subspace_coords(f, s_alg.endo_mats, endos)
    fwd_amb = np.stack(cols, axis=1) if cols else f.zeros((s_alg.dim, 0))
    to_endo = f.matmul(f.asarray(fwd_amb), ts.section)

    from_cols = []
    for s in s_alg.endo_mats:
        acc = f.zeros(ts.dim)
        for i in range(m.dim):
            acc = acc + ts.pure(s[:, i], db.functional_coords[i])
        from_cols.append(f.asarray(acc))
    from_endo = np.stack(from_cols, axis=1)

    if not Field.equal(f.matmul(to_endo, from_endo), f.eye(s_alg.dim)):
        raise BimoduleAxiomError("canonical identification: S round trip failed")
    if not Field.equal(f.matmul(from_endo, to_endo), f.eye(ts.dim)):
        raise BimoduleAxiomError("canonical identification: tensor round trip failed")

    _verify_s_iso_product_rules(m, db, end, ts, to_endo)
    return SIso(ts, end, to_endo, from_endo)


def _verify_s_iso_product_rules(m, db, end, ts, to_endo):
    f = m.field
    s_alg = end.algebra
    dual = db.dual
    for beta, s_mat in enumerate(s_alg.endo_mats):
        # rule: s (m (x) phi) = s(m) (x) phi
        left_act = ts.induced_map(s_mat, f.eye(len(dual.functional_mats)), ts)
        lhs = f.matmul(to_endo, left_act)
        rhs = f.matmul(s_alg.left_mult[beta], to_endo)
        if not Field.equal(lhs, rhs):
            raise BimoduleAxiomError(f"product rule s.(m(x)phi) fails at s_{beta}")
        # rule: (m (x) phi) s = m (x) phi s
        dual_imgs = [f.matmul(phi, s_mat) for phi in dual.functional_mats]
        coords = _matrix_subspace_coords(f, dual.functional_mats, dual_imgs)
        d_mat = np.stack(coords, axis=1) if coords else f.zeros((0, 0))
        right_act = ts.induced_map(f.eye(m.dim), f.asarray(d_mat), ts)
        lhs = f.matmul(to_endo, right_act)
        rhs = f.matmul(s_alg.right_mult[beta], to_endo)
        if not Field.equal(lhs, rhs):
            raise BimoduleAxiomError(f"product rule (m(x)phi).s fails at s_{beta}")
    # rule: (m(x)phi)(m'(x)phi') = m.phi(m') (x) phi'
    t_dual = len(dual.functional_mats)
    for i, alpha, j, beta in itertools.product(range(m.dim), range(t_dual),
                                               range(m.dim), range(t_dual)):
        eye_m, eye_d = f.eye(m.dim), f.eye(t_dual)
        left = f.matmul(to_endo, ts.pure(eye_m[:, i], eye_d[:, alpha]))
        right = f.matmul(to_endo, ts.pure(eye_m[:, j], eye_d[:, beta]))
        product = s_alg.mult(left, right)
        w = dual.functional_mats[alpha][:, j]  # phi_alpha(e_j) in A
        u = f.tensordot(w, m.right_action[i], ([0], [0]))  # e_i . w
        direct = f.matmul(to_endo, ts.pure(u, eye_d[:, beta]))
        if not Field.equal(f.asarray(product), f.asarray(direct)):
            raise BimoduleAxiomError("pointwise product rule fails in the identification")
