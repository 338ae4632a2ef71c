"""Comatrix corings and comatrix coring contexts.

A bimodule M that is finitely generated projective on the right gives the
coring M^* (x)_B M; the same data arises from context tuples
(A, B, N, M, sigma, tau) satisfying two unit/counit diagrams, and from
Morita data with surjective tau.  This module builds all three, the
canonical isomorphism between a context coring and the comatrix coring,
and the anti-isomorphism between the left dual ring and left
endomorphisms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import Algebra
from .bimodule import (
    Bimodule,
    BimoduleMap,
    DualBasis,
    DualModule,
    TensorSpace,
    _matrix_subspace_coords,
    dual_basis,
    left_endomorphism_algebra,
    regular_bimodule,
    right_dual,
    tensor_over,
)
from .coring import Coring, CoringMorphism, left_dual_ring
from .errors import (
    ContextAxiomError,
    InternalInconsistencyError,
    NotProjectiveError,
)
from .fields import Field
from .linalg import _solve

__all__ = [
    "CoringContext",
    "MoritaData",
    "comatrix_coring",
    "comatrix_data",
    "coproduct_basis_independence",
    "context_from_bimodule",
    "context_from_morita",
    "context_dual_basis",
    "context_coring",
    "context_iso",
    "left_dual_anti_iso",
]


@dataclass
class ComatrixData:
    """A comatrix coring together with the data used to build it."""

    coring: Coring
    module: Bimodule
    dual: DualModule
    basis: DualBasis
    tensor: TensorSpace  # presentation of M^* (x)_B M


def _comatrix_delta_amb(ts: TensorSpace, db: DualBasis, field):
    """Representative coproduct of phi (x) m -> sum_i phi (x) e_i (x) e_i^* (x) m.

    Works for any dual basis, not only the coordinate one.
    """
    f = field
    dual, m = ts.left_factor, ts.right_factor
    t_dual, dm = dual.dim, m.dim
    d = ts.dim
    eye_dual, eye_m = f.eye(t_dual), f.eye(dm)
    delta = f.zeros((d * d, d))
    for e_vec, phi_coords in zip(db.elements, db.functional_coords):
        # phi (x) m -> (phi (x) e_i) (x) (e_i^* (x) m) on the ambient pairs
        first = f.matmul(ts.projection, f.kron(eye_dual, f.asarray(e_vec)[:, None]))
        second = f.matmul(ts.projection, f.kron(f.asarray(phi_coords)[:, None], eye_m))
        delta = delta + f.matmul(f.kron(first, second), ts.section)
    return f.asarray(delta)


def comatrix_data(m: Bimodule, db: DualBasis | None = None) -> ComatrixData:
    """Build the comatrix coring of a right-projective bimodule."""
    f = m.field
    dual = right_dual(m)
    if db is None:
        db = dual_basis(m, dual)
    if db is None:
        raise NotProjectiveError(
            f"{m!r} admits no dual basis over its right algebra")
    ts = tensor_over(dual, m)
    delta_amb = _comatrix_delta_amb(ts, db, f)
    # counit phi (x) m -> phi(m)
    a_dim = m.right_alg.dim
    eval_amb = f.zeros((a_dim, dual.dim * m.dim))
    for alpha, phi in enumerate(dual.functional_mats):
        eval_amb[:, alpha * m.dim:(alpha + 1) * m.dim] = phi
    counit_mat = f.matmul(eval_amb, ts.section)
    coring = Coring(m.right_alg, ts.space, delta_amb, counit_mat, carrier_tensor=ts)
    return ComatrixData(coring, m, dual, db, ts)


def comatrix_coring(m: Bimodule, db: DualBasis | None = None) -> Coring:
    return comatrix_data(m, db).coring


def coproduct_basis_independence(m: Bimodule, alternative: DualBasis) -> bool:
    """True iff the coproduct built from ``alternative`` agrees with the one
    built from the coordinate dual basis, compared in the tensor square."""
    if not alternative.verify():
        raise NotProjectiveError("alternative dual basis fails the dual-basis identity")
    data = comatrix_data(m)
    f = m.field
    other = _comatrix_delta_amb(data.tensor, alternative, f)
    proj = data.coring.square.projection
    return Field.equal(f.matmul(proj, data.coring.delta_amb), f.matmul(proj, other))


class CoringContext:
    """Context data (A, B, N, M, sigma, tau) with the two defining diagrams
    machine-checked on basis elements."""

    def __init__(self, n: Bimodule, m: Bimodule, sigma: BimoduleMap, tau: BimoduleMap,
                 tensor_nm: TensorSpace, tensor_mn: TensorSpace, validate: bool = True):
        self.a_alg = m.right_alg
        self.b_alg = m.left_alg
        self.n = n
        self.m = m
        self.sigma = sigma
        self.tau = tau
        self.tensor_nm = tensor_nm
        self.tensor_mn = tensor_mn
        self.field = m.field
        if n.left_alg != self.a_alg or n.right_alg != self.b_alg:
            raise ContextAxiomError("N must be an (A, B)-bimodule")
        if validate:
            self.validate()

    def tau_of_unit(self):
        """tau(1_B) as a (dim M, dim N) matrix of ambient coefficients."""
        f = self.field
        t = f.matmul(self.tau.matrix.data, self.b_alg.unit)
        return f.matmul(self.tensor_mn.section, t).reshape(self.m.dim, self.n.dim)

    def validate(self) -> None:
        f = self.field
        w = self.tau_of_unit()
        n_dim, m_dim = self.n.dim, self.m.dim
        sig = self.sigma.matrix.data
        p_nm = self.tensor_nm.projection
        # first diagram: n -> sum_i sigma(n (x) m_i) . n_i equals n
        first = f.zeros((n_dim, n_dim))
        # second diagram: m -> sum_i m_i . sigma(n_i (x) m) equals m
        second = f.zeros((m_dim, m_dim))
        eye_n, eye_m = f.eye(n_dim), f.eye(m_dim)
        for u in range(m_dim):
            for v in range(n_dim):
                if not np.any(w[u, v] != 0):
                    continue
                coeff = w[u, v]
                # sigma(- (x) e_u): matrix N -> A
                sig_u = f.matmul(sig, f.matmul(p_nm, f.kron(eye_n, eye_m[:, u][:, None])))
                first = first + coeff * _left_scaling_col(self.n, sig_u, v)
                sig_v = f.matmul(sig, f.matmul(p_nm, f.kron(eye_n[:, v][:, None], eye_m)))
                second = second + coeff * _right_scaling_col(self.m, u, sig_v)
        if not Field.equal(f.asarray(first), eye_n):
            raise ContextAxiomError("first context diagram fails")
        if not Field.equal(f.asarray(second), eye_m):
            raise ContextAxiomError("second context diagram fails")


def _left_scaling_col(n: Bimodule, value_mat, v: int):
    """Matrix of x -> value_mat(x) . e_v, values in the left algebra of n."""
    f = n.field
    act = f.tensordot(f.eye(n.dim)[:, v], n.left_action, ([0], [1]))  # (a, m')
    return f.matmul(act.T, value_mat)


def _right_scaling_col(m: Bimodule, u: int, value_mat):
    """Matrix of x -> e_u . value_mat(x), values in the right algebra of m."""
    f = m.field
    act = f.tensordot(f.eye(m.dim)[:, u], m.right_action, ([0], [0]))  # (a, m')
    return f.matmul(act.T, value_mat)


def context_from_bimodule(m: Bimodule, db: DualBasis | None = None) -> CoringContext:
    """The canonical context (A, B, M^*, M, evaluation, dual-basis tau)."""
    data = comatrix_data(m, db)
    f = m.field
    dual, db = data.dual, data.basis
    ts_nm = data.tensor
    ts_mn = tensor_over(m, dual)
    sigma = BimoduleMap(ts_nm.space, regular_bimodule(m.right_alg), data.coring.counit_mat)
    # tau(b) = sum_i b.e_i (x) e_i^*
    tau_cols = []
    for j in range(m.left_alg.dim):
        acc = f.zeros(ts_mn.dim)
        for e_vec, phi in zip(db.elements, db.functional_coords):
            acc = acc + ts_mn.pure(f.matmul(m.left_mats[j], e_vec), phi)
        tau_cols.append(acc)
    tau = BimoduleMap(regular_bimodule(m.left_alg), ts_mn.space, np.stack(tau_cols, axis=1))
    return CoringContext(dual, m, sigma, tau, ts_nm, ts_mn)


@dataclass
class MoritaData:
    """Morita-style data: bimodule maps sigma: N (x)_B M -> A and
    tau_tilde: M (x)_A N -> B satisfying the two associativity laws."""

    n: Bimodule
    m: Bimodule
    sigma: BimoduleMap
    tau_tilde: BimoduleMap
    tensor_nm: TensorSpace
    tensor_mn: TensorSpace

    def validate(self) -> None:
        f = self.m.field
        n_dim, m_dim = self.n.dim, self.m.dim
        eye_n, eye_m = f.eye(n_dim), f.eye(m_dim)
        sig, tt = self.sigma.matrix.data, self.tau_tilde.matrix.data
        p_nm, p_mn = self.tensor_nm.projection, self.tensor_mn.projection
        for v in range(n_dim):
            for u in range(m_dim):
                s_val = f.matmul(sig, self.tensor_nm.pure(eye_n[:, v], eye_m[:, u]))
                t_val = f.matmul(tt, self.tensor_mn.pure(eye_m[:, u], eye_n[:, v]))
                # sigma(n (x) m) n' = n tau~(m (x) n')
                for w in range(n_dim):
                    lhs = f.matmul(self.n.act_left(s_val), eye_n[:, w])
                    t_uw = f.matmul(tt, self.tensor_mn.pure(eye_m[:, u], eye_n[:, w]))
                    rhs = f.matmul(self.n.act_right(t_uw), eye_n[:, v])
                    if not Field.equal(f.asarray(lhs), f.asarray(rhs)):
                        raise ContextAxiomError(
                            f"Morita associativity (sigma side) fails at ({v},{u},{w})")
                # tau~(m (x) n) m' = m sigma(n (x) m')
                for w in range(m_dim):
                    lhs = f.matmul(self.m.act_left(t_val), eye_m[:, w])
                    s_vw = f.matmul(sig, self.tensor_nm.pure(eye_n[:, v], eye_m[:, w]))
                    rhs = f.matmul(self.m.act_right(s_vw), eye_m[:, u])
                    if not Field.equal(f.asarray(lhs), f.asarray(rhs)):
                        raise ContextAxiomError(
                            f"Morita associativity (tau side) fails at ({u},{v},{w})")


def context_from_morita(md: MoritaData):
    """Invert a surjective tau_tilde into a context; None when not surjective."""
    md.validate()
    f = md.m.field
    tt = md.tau_tilde.matrix.data
    b_dim = md.m.left_alg.dim
    inverse = _solve(f, tt, f.eye(b_dim))
    if inverse is None:
        return None
    # surjective Morita pairings are bijective; verify instead of assuming
    if md.tensor_mn.dim != b_dim:
        raise InternalInconsistencyError(
            "surjective Morita pairing is not bijective; this contradicts Morita theory")
    tau = BimoduleMap(regular_bimodule(md.m.left_alg), md.tensor_mn.space, inverse)
    return CoringContext(md.n, md.m, md.sigma, tau, md.tensor_nm, md.tensor_mn)


def context_dual_basis(ctx: CoringContext):
    """The dual basis {m_i, sigma(n_i (x) -)} read off tau(1), plus the
    mutually inverse maps between N and M^*."""
    f = ctx.field
    w = ctx.tau_of_unit()
    m, n = ctx.m, ctx.n
    dual = right_dual(m)
    eye_n, eye_m = f.eye(n.dim), f.eye(m.dim)
    sig = ctx.sigma.matrix.data
    p_nm = ctx.tensor_nm.projection

    def sigma_functional(n_vec):
        """sigma(n_vec (x) -) as a value matrix M -> A."""
        return f.matmul(sig, f.matmul(p_nm, f.kron(f.asarray(n_vec)[:, None], eye_m)))

    elements, functionals = [], []
    for u in range(m.dim):
        for v in range(n.dim):
            if not np.any(w[u, v] != 0):
                continue
            elements.append(f.asarray(w[u, v] * eye_m[:, u]))
            functionals.append(sigma_functional(eye_n[:, v]))
    coords = _matrix_subspace_coords(f, dual.functional_mats, functionals) \
        if functionals else []
    db = DualBasis(m, dual, elements, coords)
    if not db.verify():
        raise ContextAxiomError("context does not produce a valid dual basis")

    chi_cols = _matrix_subspace_coords(
        f, dual.functional_mats, [sigma_functional(eye_n[:, v]) for v in range(n.dim)])
    chi = BimoduleMap(n, dual, np.stack(chi_cols, axis=1))
    # chi^{-1}(phi) = sum_i phi(m_i) . n_i
    inv_cols = []
    for phi in dual.functional_mats:
        acc = f.zeros(n.dim)
        for u in range(m.dim):
            for v in range(n.dim):
                if not np.any(w[u, v] != 0):
                    continue
                value = w[u, v] * f.matmul(phi, eye_m[:, u])  # phi(m_i) in A
                acc = acc + f.matmul(n.act_left(value), eye_n[:, v])
        inv_cols.append(f.asarray(acc))
    chi_inv = BimoduleMap(dual, n, np.stack(inv_cols, axis=1))
    if not Field.equal(f.matmul(chi.matrix.data, chi_inv.matrix.data), f.eye(dual.dim)):
        raise InternalInconsistencyError("chi o chi^{-1} is not the identity")
    if not Field.equal(f.matmul(chi_inv.matrix.data, chi.matrix.data), f.eye(n.dim)):
        raise InternalInconsistencyError("chi^{-1} o chi is not the identity")
    return db, chi, chi_inv


def context_coring(ctx: CoringContext) -> Coring:
    """The coring N (x)_B M with coproduct n (x) m -> n (x) tau(1) (x) m."""
    f = ctx.field
    w = ctx.tau_of_unit()
    ts = ctx.tensor_nm
    eye_n, eye_m = f.eye(ctx.n.dim), f.eye(ctx.m.dim)
    d = ts.dim
    delta = f.zeros((d * d, d))
    for u in range(ctx.m.dim):
        for v in range(ctx.n.dim):
            if not np.any(w[u, v] != 0):
                continue
            first = f.matmul(ts.projection, f.kron(eye_n, (w[u, v] * eye_m[:, u])[:, None]))
            second = f.matmul(ts.projection, f.kron(eye_n[:, v][:, None], eye_m))
            delta = delta + f.matmul(f.kron(first, second), ts.section)
    return Coring(ctx.a_alg, ts.space, f.asarray(delta), ctx.sigma.matrix.data,
                  carrier_tensor=ts)


@dataclass
class ContextIso:
    forward: CoringMorphism
    backward: CoringMorphism


def context_iso(ctx: CoringContext) -> ContextIso:
    """The coring isomorphism N (x)_B M -> M^* (x)_B M from Theorem-style
    transport of chi, verified in both directions."""
    f = ctx.field
    db, chi, chi_inv = context_dual_basis(ctx)
    data = comatrix_data(ctx.m)
    source = context_coring(ctx)
    target = data.coring
    theta = ctx.tensor_nm.induced_map(chi.matrix.data, f.eye(ctx.m.dim), data.tensor)
    theta_inv = data.tensor.induced_map(chi_inv.matrix.data, f.eye(ctx.m.dim),
                                        ctx.tensor_nm)
    if not Field.equal(f.matmul(theta, theta_inv), f.eye(target.dim)):
        raise InternalInconsistencyError("context iso does not invert (forward)")
    if not Field.equal(f.matmul(theta_inv, theta), f.eye(source.dim)):
        raise InternalInconsistencyError("context iso does not invert (backward)")
    forward = CoringMorphism(source, target, theta)
    backward = CoringMorphism(target, source, theta_inv)
    return ContextIso(forward, backward)


@dataclass
class AntiIso:
    """Mutually inverse anti-multiplicative identifications between the left
    dual ring of a comatrix coring and left endomorphisms of the module."""

    dual_ring: Algebra
    endos: Algebra
    forward: np.ndarray  # dual-ring coords -> End coords
    backward: np.ndarray


def left_dual_anti_iso(m: Bimodule, data: ComatrixData | None = None) -> AntiIso:
    """Check the map xi -> (x -> sum_i e_i . xi(e_i^* (x) x)) is bijective and
    anti-multiplicative onto the opposite-composition endomorphism ring.

    Failure raises InternalInconsistencyError: it would contradict a proven
    statement, so it signals an implementation bug rather than mathematics.
    """
    f = m.field
    if data is None:
        data = comatrix_data(m)
    ring = left_dual_ring(data.coring)
    endos = left_endomorphism_algebra(m)
    ts = data.tensor
    eye_m = f.eye(m.dim)
    endo_of = []
    for xi in ring.functional_mats:
        total = f.zeros((m.dim, m.dim))
        for e_vec, phi_coords in zip(data.basis.elements, data.basis.functional_coords):
            # column x: e_i . xi(e_i^* (x) x)
            embed = f.matmul(ts.projection, f.kron(f.asarray(phi_coords)[:, None], eye_m))
            vals = f.matmul(xi, embed)  # (A coords, x)
            total = total + _right_scaling_matrix_from_values(m, e_vec, vals)
        endo_of.append(f.asarray(total))
    try:
        cols = _matrix_subspace_coords(f, endos.endo_mats, endo_of)
    except Exception as exc:  # noqa: BLE001 - any failure here is a bug
        raise InternalInconsistencyError(f"anti-isomorphism left the endo ring: {exc}")
    forward = np.stack(cols, axis=1)
    backward = _solve(f, f.asarray(forward), f.eye(ring.dim))
    if backward is None or ring.dim != endos.dim:
        raise InternalInconsistencyError("left dual ring is not bijective with End")
    for i in range(ring.dim):
        for j in range(ring.dim):
            product = ring.mult(f.eye(ring.dim)[:, i], f.eye(ring.dim)[:, j])
            lhs = endos.mat_of(f.matmul(forward, product))
            rhs = f.matmul(endos.mat_of(forward[:, i]), endos.mat_of(forward[:, j]))
            if not Field.equal(f.asarray(lhs), f.asarray(rhs)):
                raise InternalInconsistencyError(
                    f"anti-multiplicativity fails at basis pair ({i}, {j})")
    return AntiIso(ring, endos, f.asarray(forward), f.asarray(backward))


def _right_scaling_matrix_from_values(m: Bimodule, e_vec, value_mat):
    """Matrix of x -> e . w(x) where w(x) is given columnwise in value_mat."""
    f = m.field
    act = f.tensordot(f.asarray(e_vec), m.right_action, ([0], [0]))  # (a, m')
    return f.matmul(act.T, f.asarray(value_mat))
