"""Small dense solver for linear matrix inequality programs.

Problems have the form

    minimize    c^T x
    subject to  F(x) = F0 + sum_i x_i F_i  >= 0   (block diagonal, PSD)
                a_k^T x = b_k                      (optional)

and are solved together with their dual

    maximize    -Tr(F0 Z)
    subject to  Tr(F_i Z) = c_i,  Z >= 0

by an infeasible-start primal-dual path-following method with
Nesterov-Todd scaling and a Mehrotra predictor-corrector. Equalities are
eliminated up front by a null-space reparametrisation ``x = x_p + N y``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

import numpy as np
import scipy.linalg as sla

from . import linalg
from .errors import Infeasible, MaxIterations, ParseError, SolverError, Unbounded

log = logging.getLogger(__name__)

OPTIMAL = "Optimal"
INFEASIBLE = "Infeasible"
UNBOUNDED = "Unbounded"
MAX_ITERATIONS = "MaxIterations"

# when the corrected step is shorter than this, also try a plain centring step
_SHORT_STEP = 0.2
_CENTRING_SIGMA = 0.5


@dataclass
class SolverSettings:
    gap_tol: float = 1e-7
    feas_tol: float = 1e-8
    comp_tol: float = 1e-6
    max_iter: int = 200
    initial_scale: Optional[float] = None
    step_fraction: float = 0.98
    verify: bool = True


@dataclass
class LmiProblem:
    """An LMI program in block form.

    ``F0`` is a list of symmetric blocks; ``F`` holds, for every block, an array
    of shape ``(num_vars, size, size)`` whose i-th slice is that block of F_i.
    ``eq_A x = eq_b`` are optional equalities; ``x0`` an optional strictly
    feasible seed.
    """

    c: np.ndarray
    F0: list
    F: list
    eq_A: Optional[np.ndarray] = None
    eq_b: Optional[np.ndarray] = None
    x0: Optional[np.ndarray] = None

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=float).ravel()
        self.F0 = [np.asarray(b, dtype=float) for b in self.F0]
        self.F = [np.asarray(b, dtype=float).reshape(len(self.c), *np.shape(b0))
                  for b, b0 in zip(self.F, self.F0)]
        if len(self.F) != len(self.F0):
            raise ValueError("F and F0 must have the same number of blocks")
        for b0, fb in zip(self.F0, self.F):
            if b0.ndim != 2 or b0.shape[0] != b0.shape[1]:
                raise ValueError(f"block of shape {b0.shape} is not square")
            if fb.shape[1:] != b0.shape:
                raise ValueError("F_i blocks must share F0's block structure")
            scale = max(1.0, float(np.max(np.abs(fb), initial=0.0)), float(np.max(np.abs(b0), initial=0.0)))
            if np.max(np.abs(b0 - b0.T), initial=0.0) > linalg.SYM_TOL * scale or \
                    np.max(np.abs(fb - fb.transpose(0, 2, 1)), initial=0.0) > linalg.SYM_TOL * scale:
                raise ValueError("LMI data must be symmetric")
        if self.eq_A is not None:
            self.eq_A = np.atleast_2d(np.asarray(self.eq_A, dtype=float))
            self.eq_b = np.asarray(self.eq_b, dtype=float).ravel()
            if self.eq_A.shape != (len(self.eq_b), self.num_vars):
                raise ValueError("equality data has the wrong shape")
        if self.x0 is not None:
            self.x0 = np.asarray(self.x0, dtype=float).ravel()

    @property
    def num_vars(self) -> int:
        return len(self.c)

    @property
    def block_sizes(self) -> list[int]:
        return [b.shape[0] for b in self.F0]

    def evaluate(self, x) -> list:
        """The blocks of F(x)."""
        x = np.asarray(x, dtype=float)
        return [b0 + np.tensordot(x, fb, axes=1) for b0, fb in zip(self.F0, self.F)]

    def adjoint(self, blocks) -> np.ndarray:
        """The vector (Tr(F_i Z))_i for block-diagonal Z."""
        out = np.zeros(self.num_vars)
        for fb, zb in zip(self.F, blocks):
            out += np.tensordot(fb, zb, axes=([1, 2], [0, 1]))
        return out


@dataclass
class SdpSolution:
    x: np.ndarray
    primal_objective: float
    dual_objective: float
    gap: float
    status: str
    dual_matrix: list
    iterations: int = 0
    primal_residual: float = 0.0
    dual_residual: float = 0.0
    min_slack_eig: float = float("nan")
    min_dual_eig: float = float("nan")
    message: str = ""
    problem: Optional[LmiProblem] = field(default=None, repr=False)

    def raise_for_status(self):
        errors = {INFEASIBLE: Infeasible, UNBOUNDED: Unbounded, MAX_ITERATIONS: MaxIterations}
        if self.status != OPTIMAL:
            exc = errors.get(self.status, SolverError)
            raise exc(self.message or f"solver finished with status {self.status}",
                      solution=self, problem=self.problem)
        return self


# --- core solver ------------------------------------------------------------

def _sym(a):
    return (a + a.swapaxes(-1, -2)) / 2


def _block_eig_min(blocks):
    return min(float(np.linalg.eigvalsh(b)[0]) for b in blocks) if blocks else np.inf


def _scaled_step(vs, deltas):
    """Largest alpha with diag(v) + alpha dX >= 0."""
    alpha = np.inf
    for v, d in zip(vs, deltas):
        r = 1.0 / np.sqrt(v)
        lam = np.linalg.eigvalsh(_sym(d * r[:, None] * r[None, :]))[0]
        if lam < 0:
            alpha = min(alpha, -1.0 / lam)
    return alpha


def _reduce(p: LmiProblem):
    """Eliminate equalities; returns (c, F0, F, x_p, N) of the reduced problem."""
    m = p.num_vars
    if p.eq_A is None or len(p.eq_b) == 0:
        return p.c, p.F0, p.F, np.zeros(m), np.eye(m), 0.0
    a, b = p.eq_A, p.eq_b
    x_p, *_ = np.linalg.lstsq(a, b, rcond=None)
    if np.linalg.norm(a @ x_p - b) > 1e-9 * (1 + np.linalg.norm(b)):
        raise Infeasible("linear equality constraints are inconsistent")
    null = sla.null_space(a)
    c_r = null.T @ p.c
    f0_r = [b0 + np.tensordot(x_p, fb, axes=1) for b0, fb in zip(p.F0, p.F)]
    f_r = [np.tensordot(null.T, fb, axes=1) for fb in p.F]
    return c_r, f0_r, f_r, x_p, null, float(p.c @ x_p)


def solve(p: LmiProblem, settings: Optional[SolverSettings] = None) -> SdpSolution:
    """Solve an LMI program; the returned solution carries its status.

    Call ``raise_for_status()`` on the result to turn a non-optimal status
    into the matching exception.
    """
    s = settings or SolverSettings()
    try:
        c, f0, fs, x_p, null, c_const = _reduce(p)
    except Infeasible as exc:
        return SdpSolution(np.full(p.num_vars, np.nan), np.inf, -np.inf, np.inf, INFEASIBLE,
                           [np.zeros_like(b) for b in p.F0], message=str(exc), problem=p)
    sol = _solve_reduced(c, f0, fs, null, x_p, p.x0, s)
    y, z, status, it, msg = sol
    x = x_p + null @ y if len(y) else x_p.copy()
    return _finish(p, x, z, status, it, msg, c_const, s)


def _finish(p, x, z, status, it, msg, c_const, s):
    slack = p.evaluate(x)
    pobj = float(p.c @ x)
    dobj = -sum(float(np.sum(b0 * zb)) for b0, zb in zip(p.F0, z))
    rd = p.c - p.adjoint(z) if p.num_vars else np.zeros(0)
    if p.eq_A is not None and len(p.eq_b):
        # equality multipliers absorb the component of c - A*(Z) in range(eq_A^T)
        nu, *_ = np.linalg.lstsq(p.eq_A.T, rd, rcond=None)
        rd = rd - p.eq_A.T @ nu
        dobj += float(nu @ p.eq_b)
    min_s = min((linalg.lambda_min(b) for b in slack), default=np.inf) if s.verify else _block_eig_min(slack)
    min_z = min((linalg.lambda_min(b) for b in z), default=np.inf) if s.verify else _block_eig_min(z)
    gap = pobj - dobj
    sol = SdpSolution(x=x, primal_objective=pobj, dual_objective=dobj, gap=gap, status=status,
                      dual_matrix=z, iterations=it, dual_residual=float(np.linalg.norm(rd)),
                      min_slack_eig=min_s, min_dual_eig=min_z, message=msg, problem=p)
    if status == OPTIMAL:
        scale = 1.0 + max((float(np.max(np.abs(b))) for b in p.F0), default=0.0)
        comp = abs(sum(float(np.sum(sb * zb)) for sb, zb in zip(slack, z)))
        bad = []
        if min_s < -s.feas_tol * scale:
            bad.append(f"F(x) has eigenvalue {min_s:.3e}")
        if min_z < -s.feas_tol * scale:
            bad.append(f"Z has eigenvalue {min_z:.3e}")
        if comp > s.comp_tol:
            bad.append(f"complementarity {comp:.3e}")
        if bad:
            sol.status = MAX_ITERATIONS
            sol.message = "post-solve verification failed: " + "; ".join(bad)
    return sol


def _solve_reduced(c, f0, fs, null, x_p, x0, s: SolverSettings):
    m = len(c)
    sizes = [b.shape[0] for b in f0]
    nn = sum(sizes)
    if m == 0:
        # nothing to optimise: feasible iff F0 >= 0, and Z = 0 is dual optimal
        lam = _block_eig_min(f0)
        z = [np.zeros_like(b) for b in f0]
        if lam >= -s.feas_tol * (1 + max(np.max(np.abs(b)) for b in f0)):
            return np.zeros(0), z, OPTIMAL, 0, ""
        for k, b in enumerate(f0):
            w, v = np.linalg.eigh(b)
            if w[0] < 0:
                z[k] = np.outer(v[:, 0], v[:, 0])
        return np.zeros(0), z, INFEASIBLE, 0, "F0 is not PSD and there are no variables"

    def evaluate(y):
        return [b0 + np.tensordot(y, fb, axes=1) for b0, fb in zip(f0, fs)]

    def adjoint(blocks):
        out = np.zeros(m)
        for fb, zb in zip(fs, blocks):
            out += np.tensordot(fb, zb, axes=([1, 2], [0, 1]))
        return out

    f_norm = np.sqrt(sum(np.sum(fb * fb, axis=(1, 2)) for fb in fs))
    f0_norm = np.sqrt(sum(np.sum(b * b) for b in f0))
    if s.initial_scale:
        xi = eta = float(s.initial_scale)
    else:
        xi = max(10.0, np.sqrt(nn), nn * float(np.max((1 + np.abs(c)) / (1 + f_norm))))
        eta = max(10.0, np.sqrt(nn), float(np.max(f_norm)), f0_norm)

    y = np.zeros(m)
    sm = [eta * np.eye(k) for k in sizes]
    if x0 is not None:
        y0 = null.T @ (x0 - x_p)
        start = evaluate(y0)
        if _block_eig_min(start) > 0:
            y, sm = y0, start
        else:
            log.debug("seed is not strictly feasible; using the default start")
    z = [xi * np.eye(k) for k in sizes]

    gram_m = sum(fb.reshape(m, -1) @ fb.reshape(m, -1).T for fb in fs)
    try:
        gram_factor = sla.cho_factor(gram_m)
        gram_solve = lambda rhs: sla.cho_solve(gram_factor, rhs)  # noqa: E731
    except np.linalg.LinAlgError:
        # linearly dependent F_i
        gram_pinv = np.linalg.pinv(gram_m)
        gram_solve = lambda rhs: gram_pinv @ rhs  # noqa: E731

    c_scale = 1.0 + float(np.linalg.norm(c))
    f0_scale = 1.0 + f0_norm
    best = None
    it = 0
    for it in range(s.max_iter + 1):
        rp = [fy - sb for fy, sb in zip(evaluate(y), sm)]
        rd = c - adjoint(z)
        mu = sum(float(np.sum(sb * zb)) for sb, zb in zip(sm, z)) / nn
        pobj = float(c @ y)
        dobj = -sum(float(np.sum(b0 * zb)) for b0, zb in zip(f0, z))
        gap = pobj - dobj
        pres = np.sqrt(sum(np.sum(r * r) for r in rp)) / f0_scale
        dres = float(np.linalg.norm(rd)) / c_scale
        log.debug("it %3d pobj %+.10e dobj %+.10e gap %.2e pres %.1e dres %.1e mu %.1e",
                  it, pobj, dobj, gap, pres, dres, mu)
        score = max(abs(gap), pres, dres)
        if best is None or score < best[0]:
            best = (score, y.copy(), [zb.copy() for zb in z])
        if abs(gap) <= s.gap_tol and nn * mu <= s.gap_tol and pres <= s.feas_tol and dres <= s.feas_tol:
            return y, z, OPTIMAL, it, ""

        # infeasibility certificates
        # Z >= 0 with A(Z) ~ 0 and Tr(F0 Z) < 0 rules out every x (scale-free test)
        trz = sum(float(np.trace(zb)) for zb in z)
        if dobj > 1e-8 * trz and np.linalg.norm(adjoint(z)) <= s.feas_tol * dobj:
            return y, z, INFEASIBLE, it, "primal infeasibility certificate found"
        ynorm = float(np.linalg.norm(y))
        if ynorm > 1e8 and pobj < 0:
            d = y / ynorm
            lin = [np.tensordot(d, fb, axes=1) for fb in fs]
            if float(c @ d) < -s.feas_tol and _block_eig_min(lin) >= -s.feas_tol * abs(float(c @ d)):
                return y, z, UNBOUNDED, it, "dual infeasibility certificate found"
        if it == s.max_iter:
            break

        try:
            lo_s = [np.linalg.cholesky(sb) for sb in sm]
            for zb in z:
                np.linalg.cholesky(zb)
        except np.linalg.LinAlgError:
            log.debug("lost positive definiteness at iteration %d", it)
            break
        # NT scaling: with S = L L^T and L^T Z L = Q diag(lam) Q^T, the matrix
        # G = L^{-T} Q diag(lam)^{1/4} gives W = G G^T (W S W = Z) and the scaled
        # point G^T S G = G^{-1} Z G^{-T} = diag(sqrt(lam)).
        gs, g_invs, vs = [], [], []
        for lo, zb in zip(lo_s, z):
            w_r, q_r = np.linalg.eigh(_sym(lo.T @ zb @ lo))
            w_r = np.clip(w_r, 1e-300, None)
            li = sla.solve_triangular(lo, np.eye(lo.shape[0]), lower=True)
            gm = li.T @ (q_r * w_r ** 0.25)
            gs.append(gm)
            g_invs.append((q_r * w_r ** -0.25).T @ lo.T)
            vs.append(np.sqrt(w_r))

        # Schur matrix M_ij = Tr(F_i W F_j W) = <G^T F_i G, G^T F_j G>. Factor it
        # through a QR of the scaled constraint rows rather than forming M, which
        # would square the (1/mu-sized) condition number near the optimum.
        scaled = np.concatenate([np.matmul(np.matmul(gm.T, fb), gm).reshape(m, -1)
                                 for gm, fb in zip(gs, fs)], axis=1)
        r_fac = np.linalg.qr(scaled.T, mode="r") if scaled.shape[1] >= m else None
        rdiag = np.abs(np.diag(r_fac)) if r_fac is not None else np.zeros(1)
        if r_fac is not None and rdiag.min() > 1e-13 * rdiag.max():
            def linsolve(rhs, r_fac=r_fac):
                return sla.solve_triangular(r_fac, sla.solve_triangular(r_fac.T, rhs, lower=True))
        else:
            pinv = np.linalg.pinv(scaled @ scaled.T, rcond=1e-13, hermitian=True)
            linsolve = lambda rhs: pinv @ rhs  # noqa: E731

        rp_hat = [gm.T @ r @ gm for gm, r in zip(gs, rp)]
        offsets = np.cumsum([0] + [k * k for k in sizes])

        def direction(target, corr):
            # Everything in the scaled space, where S and Z are both diag(v):
            # dZ~ + dS~ = target~ - corr~ is well conditioned even when W is not.
            base = [t - r for t, r in zip(target, rp_hat)]
            if corr is not None:
                base = [b - k for b, k in zip(base, corr)]
            dy = linsolve(scaled @ np.concatenate([b.ravel() for b in base]) - rd)
            lin = dy @ scaled
            lin = [lin[offsets[i]:offsets[i + 1]].reshape(k, k) for i, k in enumerate(sizes)]
            ds = [r + np.tensordot(dy, fb, axes=1) for r, fb in zip(rp, fs)]
            ds_hat = [_sym(r + d) for r, d in zip(rp_hat, lin)]
            dz = [_sym(gm @ (b - d) @ gm.T) for gm, b, d in zip(gs, base, lin)]
            # the Schur solve loses digits as mu -> 0; restore A(dZ) = rd exactly
            fix = gram_solve(rd - adjoint(dz))
            dz_fix = [np.tensordot(fix, fb, axes=1) for fb in fs]
            dz = [d + e for d, e in zip(dz, dz_fix)]
            dz_hat = [_sym(b - d + gi @ e @ gi.T) for b, d, gi, e in zip(base, lin, g_invs, dz_fix)]
            return dy, ds, dz, ds_hat, dz_hat

        def steps(dirn):
            return _scaled_step(vs, dirn[3]), _scaled_step(vs, dirn[4])

        # predictor
        pred = direction([-np.diag(v) for v in vs], None)
        ap, ad = (min(1.0, a) for a in steps(pred))
        mu_aff = sum(float(np.sum((np.diag(v) + ap * d1) * (np.diag(v) + ad * d2)))
                     for v, d1, d2 in zip(vs, pred[3], pred[4])) / nn
        sigma = min(1.0, max(0.0, (mu_aff / mu) ** 3)) if mu > 0 else 0.0
        # Mehrotra second-order term, solved as a Lyapunov equation in the scaled space
        corr = []
        for v, s_hat, z_hat in zip(vs, pred[3], pred[4]):
            prod = z_hat @ s_hat
            corr.append((prod + prod.T) / (v[:, None] + v[None, :]))
        dirn = direction([np.diag(sigma * mu / v - v) for v in vs], corr)
        ap, ad = steps(dirn)
        if min(ap, ad) < _SHORT_STEP:
            # the second-order term can misfire near degenerate optima; fall back
            # to a plain centring direction when it allows a longer step
            alt = direction([np.diag(_CENTRING_SIGMA * mu / v - v) for v in vs], None)
            ap2, ad2 = steps(alt)
            if min(ap2, ad2) > min(ap, ad):
                dirn, ap, ad = alt, ap2, ad2
        dy, ds, dz = dirn[:3]
        ap = min(1.0, s.step_fraction * ap)
        ad = min(1.0, s.step_fraction * ad)
        log.debug("    step primal %.3e dual %.3e sigma %.2e", ap, ad, sigma)
        y = y + ap * dy
        sm = [_sym(sb + ap * d) for sb, d in zip(sm, ds)]
        z = [_sym(zb + ad * d) for zb, d in zip(z, dz)]

    _, y, z = best
    return y, z, MAX_ITERATIONS, it, f"no convergence within {s.max_iter} iterations"


# --- convenience wrappers -----------------------------------------------------

class AffineResult(NamedTuple):
    value: float
    coefficients: np.ndarray
    solution: SdpSolution


def _stack(directions, shape):
    if len(directions) == 0:
        return np.zeros((0,) + shape)
    return np.stack([np.asarray(d, dtype=float) for d in directions])


def min_lambda1(a0, directions: Sequence = (), settings: Optional[SolverSettings] = None) -> AffineResult:
    """Minimise the largest eigenvalue of ``a0 + sum_i k_i D_i`` over real k.

    Posed as: minimise t subject to ``t I - a0 - sum k_i D_i >= 0``.
    """
    a0 = linalg.check_symmetric(a0)
    n = a0.shape[0]
    d = _stack(directions, (n, n))
    for di in d:
        linalg.check_symmetric(di)
    nd = len(d)
    fb = np.concatenate([np.eye(n)[None], -d], axis=0)
    c = np.zeros(nd + 1)
    c[0] = 1.0
    seed = np.zeros(nd + 1)
    seed[0] = np.linalg.norm(a0) + 1.0
    prob = LmiProblem(c=c, F0=[-a0], F=[fb], x0=seed)
    sol = solve(prob, settings).raise_for_status()
    return AffineResult(sol.primal_objective, sol.x[1:], sol)


def _is_sym(a):
    return a.shape[0] == a.shape[1] and np.allclose(a, a.T, rtol=0, atol=1e-12)


def opnorm_lmi(x0, directions: Sequence = (), symmetric: Optional[bool] = None) -> LmiProblem:
    """LMI for min_k ||x0 + sum k_i D_i|| with variables (t, k).

    For symmetric data the block matrix [[tI, X], [X, tI]] is congruent to
    diag(tI + X, tI - X), which halves the block size.
    """
    x0 = np.asarray(x0, dtype=float)
    r, cdim = x0.shape
    d = _stack(directions, (r, cdim))
    nd = len(d)
    if symmetric is None:
        symmetric = _is_sym(x0) and all(_is_sym(di) for di in d)
    c = np.zeros(nd + 1)
    c[0] = 1.0
    seed = np.zeros(nd + 1)
    seed[0] = np.linalg.norm(x0) + 1.0
    if symmetric:
        eye = np.eye(r)[None]
        blocks0 = [x0, -x0]
        blocks = [np.concatenate([eye, d]), np.concatenate([eye, -d])]
        return LmiProblem(c=c, F0=blocks0, F=blocks, x0=seed)
    size = r + cdim
    f0 = np.zeros((size, size))
    f0[:r, r:] = x0
    f0[r:, :r] = x0.T
    fb = np.zeros((nd + 1, size, size))
    fb[0] = np.eye(size)
    fb[1:, :r, r:] = d
    fb[1:, r:, :r] = d.transpose(0, 2, 1)
    return LmiProblem(c=c, F0=[f0], F=[fb], x0=seed)


def min_opnorm_affine(x0, directions: Sequence = (), settings: Optional[SolverSettings] = None,
                      symmetric: Optional[bool] = None) -> AffineResult:
    """Minimise the operator norm of ``x0 + sum_i k_i D_i`` over real k."""
    prob = opnorm_lmi(x0, directions, symmetric)
    sol = solve(prob, settings).raise_for_status()
    return AffineResult(sol.primal_objective, sol.x[1:], sol)


# --- debug dump -----------------------------------------------------------------

def dump_problem(p: LmiProblem) -> str:
    """Sparse text form: header lines, then ``k block row col value`` per upper-triangle nonzero.

    ``k = 0`` is F0 and ``k = i`` is F_i; blocks, rows and columns are 1-based.
    """
    out = ["# osgraph LMI problem", f"vars {p.num_vars}",
           "blocks " + " ".join(str(k) for k in p.block_sizes),
           "c " + " ".join(repr(float(v)) for v in p.c)]
    if p.eq_A is not None:
        for a, b in zip(p.eq_A, p.eq_b):
            out.append("eq " + " ".join(repr(float(v)) for v in a) + " " + repr(float(b)))
    if p.x0 is not None:
        out.append("x0 " + " ".join(repr(float(v)) for v in p.x0))
    for bi, (b0, fb) in enumerate(zip(p.F0, p.F), start=1):
        mats = [b0] + list(fb)
        for k, mat in enumerate(mats):
            rows, cols = np.nonzero(np.triu(mat))
            for i, j in zip(rows, cols):
                out.append(f"{k} {bi} {i + 1} {j + 1} {float(mat[i, j])!r}")
    return "\n".join(out) + "\n"


def load_problem(text: str) -> LmiProblem:
    m = None
    sizes = None
    c = None
    eqs = []
    x0 = None
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        try:
            if head == "vars":
                m = int(rest[0])
            elif head == "blocks":
                sizes = [int(v) for v in rest]
            elif head == "c":
                c = [float(v) for v in rest]
            elif head == "eq":
                eqs.append([float(v) for v in rest])
            elif head == "x0":
                x0 = [float(v) for v in rest]
            else:
                k, b, i, j = int(head), int(rest[0]), int(rest[1]), int(rest[2])
                entries.append((k, b - 1, i - 1, j - 1, float(rest[3])))
        except (ValueError, IndexError):
            raise ParseError(f"malformed line {line!r}", lineno) from None
    if m is None or sizes is None or c is None or len(c) != m:
        raise ParseError("missing or inconsistent vars/blocks/c header")
    f0 = [np.zeros((k, k)) for k in sizes]
    fs = [np.zeros((m, k, k)) for k in sizes]
    for k, b, i, j, v in entries:
        target = f0[b] if k == 0 else fs[b][k - 1]
        target[i, j] = target[j, i] = v
    eq_a = np.array([e[:-1] for e in eqs]) if eqs else None
    eq_b = np.array([e[-1] for e in eqs]) if eqs else None
    return LmiProblem(c=np.array(c), F0=f0, F=fs, eq_A=eq_a, eq_b=eq_b,
                      x0=None if x0 is None else np.array(x0))
