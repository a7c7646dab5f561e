"""Graph parameters built from the quotient M_n / S_G^perp, each posed as an LMI.

S_G is the span of the matrix units on the diagonal and on the edges of G;
its orthogonal complement S_G^perp is spanned by the units on off-diagonal
non-edges. Every quantity here optimises over perturbations K supported on
S_G^perp (or over dual variables supported on S_G) and is solved with
:mod:`osgraph.sdp`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from . import graph as gc
from . import linalg
from .errors import DegenerateQuotient, NotInducedBipartite, ShapeMismatch, SizeCapExceeded
from .graph import Graph
from .sdp import LmiProblem, SolverSettings, min_lambda1, opnorm_lmi, solve

FLAG_TOL = 1e-4
RATIO_FLOOR = 1e-6  # relative to max(1, ||X||); solver noise near zero is ~gap_tol
PRODUCT_CAP = 40


class Value(float):
    """A float carrying the optimiser data that certifies it."""

    def __new__(cls, value, certificate=None):
        obj = super().__new__(cls, value)
        obj.certificate = certificate or {}
        return obj


# --- direction bases ------------------------------------------------------------

def _sym_unit(n, i, j):
    d = np.zeros((n, n))
    d[i, j] = d[j, i] = 1.0
    return d


def _unit(n, i, j):
    d = np.zeros((n, n))
    d[i, j] = 1.0
    return d


def coperp_symmetric_directions(g: Graph) -> list[np.ndarray]:
    """E_ij + E_ji for every non-edge i < j."""
    return [_sym_unit(g.n, i, j) for i, j in gc.coperp_basis(g).unordered()]


def coperp_directions(g: Graph) -> list[np.ndarray]:
    """E_ij for every ordered off-diagonal non-edge (i, j)."""
    return [_unit(g.n, i, j) for i, j in gc.coperp_basis(g).pairs]


def _combine(dirs, coeffs, n):
    out = np.zeros((n, n))
    for d, k in zip(dirs, coeffs):
        out += k * d
    return out


def _square(g: Graph, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (g.n, g.n):
        raise ShapeMismatch(f"X must be {g.n}x{g.n} for this graph, got {x.shape}")
    return x


def _is_sym(x):
    return np.allclose(x, x.T, rtol=0, atol=1e-12)


# --- Lovasz theta ------------------------------------------------------------------

def theta_bar(g: Graph, settings: Optional[SolverSettings] = None) -> Value:
    """Lovasz theta of the complement: min lambda_1(R_G + K), K = K^T on non-edges of G."""
    dirs = coperp_symmetric_directions(g)
    r = gc.r_matrix(g)
    res = min_lambda1(r, dirs, settings)
    k = _combine(dirs, res.coefficients, g.n)
    return Value(res.value, {"K": k, "matrix": r + k, "iterations": res.solution.iterations,
                             "gap": res.solution.gap})


def theta(g: Graph, settings: Optional[SolverSettings] = None) -> Value:
    """Lovasz theta: min lambda_1(R_{Gbar} + K) with K = K^T supported on the edges of G."""
    return theta_bar(gc.complement(g), settings)


def theta_dual(g: Graph, settings: Optional[SolverSettings] = None) -> Value:
    """Lovasz theta from the maximisation side.

    maximise sum_ij B_ij  subject to  B >= 0, Tr B = 1, B_ij = 0 on edges of G.
    """
    n = g.n
    support = [(i, i) for i in range(n)] + gc.coperp_basis(g).unordered()
    basis = np.stack([_sym_unit(n, i, j) if i != j else _unit(n, i, i) for i, j in support])
    c = -np.array([1.0 if i == j else 2.0 for i, j in support])
    eq_a = np.array([[1.0 if i == j else 0.0 for i, j in support]])
    seed = np.array([1.0 / n if i == j else 0.0 for i, j in support])
    prob = LmiProblem(c=c, F0=[np.zeros((n, n))], F=[basis], eq_A=eq_a, eq_b=[1.0], x0=seed)
    sol = solve(prob, settings).raise_for_status()
    b = np.tensordot(sol.x, basis, axes=1)
    return Value(-sol.primal_objective, {"B": b, "iterations": sol.iterations, "gap": sol.gap})


# --- the two quotient norms ----------------------------------------------------------

def d_inf(g: Graph, x, settings: Optional[SolverSettings] = None) -> Value:
    """Operator-space quotient norm: min over real K on S_G^perp of ||X + K||.

    For symmetric X the minimum is attained at a symmetric K (average K with
    K^T), so only symmetric perturbations are searched in that case.
    """
    x = _square(g, x)
    sym = _is_sym(x)
    dirs = coperp_symmetric_directions(g) if sym else coperp_directions(g)
    prob = opnorm_lmi(x, dirs, symmetric=sym)
    sol = solve(prob, settings).raise_for_status()
    k = _combine(dirs, sol.x[1:], g.n)
    return Value(sol.primal_objective, {"K": k, "iterations": sol.iterations, "gap": sol.gap})


def d_inf_dual(g: Graph, x, settings: Optional[SolverSettings] = None) -> Value:
    """Trace-norm dual of :func:`d_inf`.

    maximise Tr(X^T Q) over real Q supported on S_G with ||Q||_1 <= 1, using
    ``||Q||_1 <= 1  <=>  [[U, Q], [Q^T, V]] >= 0`` for some U, V with
    ``Tr U + Tr V = 2``.
    """
    x = _square(g, x)
    n = g.n
    upper = [(i, j) for i in range(n) for j in range(i, n)]
    q_support = [(i, i) for i in range(n)] + [p for e in sorted(g.edges) for p in (e, e[::-1])]
    size = 2 * n
    mats, cost, trace_row, seed = [], [], [], []
    for off in (0, n):  # U then V
        for i, j in upper:
            m = np.zeros((size, size))
            m[off + i, off + j] = m[off + j, off + i] = 1.0
            mats.append(m)
            cost.append(0.0)
            trace_row.append(1.0 if i == j else 0.0)
            seed.append(1.0 / n if i == j else 0.0)
    for i, j in q_support:
        m = np.zeros((size, size))
        m[i, n + j] = m[n + j, i] = 1.0
        mats.append(m)
        cost.append(-x[i, j])
        trace_row.append(0.0)
        seed.append(0.0)
    prob = LmiProblem(c=np.array(cost), F0=[np.zeros((size, size))], F=[np.stack(mats)],
                      eq_A=np.array([trace_row]), eq_b=[2.0], x0=np.array(seed))
    sol = solve(prob, settings).raise_for_status()
    q = np.zeros((n, n))
    nq = len(q_support)
    for (i, j), v in zip(q_support, sol.x[-nq:]):
        q[i, j] = v
    return Value(-sol.primal_objective, {"Q": q, "iterations": sol.iterations, "gap": sol.gap})


def sigma_lmi(g: Graph, x, symmetric: Optional[bool] = None):
    """LMI for the operator-system quotient norm, plus a decoder for its variables.

    General form: minimise lam subject to
    ``[[lam I + K1, X + K2], [(X + K2)^T, lam I + K3]] >= 0`` with K1, K3
    symmetric and K2 arbitrary, all on S_G^perp.

    For symmetric X one may take K1 = K3 and K2 symmetric (swap the diagonal
    blocks and average); the block matrix is then congruent to
    ``diag(lam I + K1 + X + K2, lam I + K1 - X - K2)``.
    """
    x = _square(g, x)
    n = g.n
    if symmetric is None:
        symmetric = _is_sym(x)
    sdirs = coperp_symmetric_directions(g)
    ns = len(sdirs)
    seed_lam = float(np.linalg.norm(x)) + 1.0
    if symmetric:
        m = 1 + 2 * ns
        plus = np.zeros((m, n, n))
        minus = np.zeros((m, n, n))
        plus[0] = minus[0] = np.eye(n)
        for k, d in enumerate(sdirs):
            plus[1 + k] = minus[1 + k] = d          # K1
            plus[1 + ns + k] = d                    # K2
            minus[1 + ns + k] = -d
        c = np.zeros(m)
        c[0] = 1.0
        seed = np.zeros(m)
        seed[0] = seed_lam
        prob = LmiProblem(c=c, F0=[x, -x], F=[plus, minus], x0=seed)

        def decode(v):
            k1 = _combine(sdirs, v[1:1 + ns], n)
            k2 = _combine(sdirs, v[1 + ns:], n)
            return {"K1": k1, "K2": k2, "K3": k1.copy()}
        return prob, decode

    udirs = coperp_directions(g)
    nu = len(udirs)
    m = 1 + 2 * ns + nu
    size = 2 * n
    fb = np.zeros((m, size, size))
    fb[0] = np.eye(size)
    for k, d in enumerate(sdirs):
        fb[1 + k, :n, :n] = d
        fb[1 + ns + k, n:, n:] = d
    for k, d in enumerate(udirs):
        fb[1 + 2 * ns + k, :n, n:] = d
        fb[1 + 2 * ns + k, n:, :n] = d.T
    f0 = np.zeros((size, size))
    f0[:n, n:] = x
    f0[n:, :n] = x.T
    c = np.zeros(m)
    c[0] = 1.0
    seed = np.zeros(m)
    seed[0] = seed_lam
    prob = LmiProblem(c=c, F0=[f0], F=[fb], x0=seed)

    def decode(v):
        return {"K1": _combine(sdirs, v[1:1 + ns], n),
                "K3": _combine(sdirs, v[1 + ns:1 + 2 * ns], n),
                "K2": _combine(udirs, v[1 + 2 * ns:], n)}
    return prob, decode


def sigma(g: Graph, x, settings: Optional[SolverSettings] = None) -> Value:
    """Operator-system quotient norm of X + S_G^perp."""
    prob, decode = sigma_lmi(g, x)
    sol = solve(prob, settings).raise_for_status()
    cert = decode(sol.x)
    cert.update(iterations=sol.iterations, gap=sol.gap)
    return Value(sol.primal_objective, cert)


def sigma_dual(g: Graph, x, settings: Optional[SolverSettings] = None) -> Value:
    """Maximise 2 Tr(X^T B) over real A, B, C supported on S_G with
    ``[[A, B], [B^T, C]] >= 0`` and ``Tr(A + C) = 1``."""
    x = _square(g, x)
    n = g.n
    size = 2 * n
    sym_support = [(i, i) for i in range(n)] + sorted(g.edges)
    b_support = [(i, i) for i in range(n)] + [p for e in sorted(g.edges) for p in (e, e[::-1])]
    mats, cost, trace_row, seed = [], [], [], []
    for off in (0, n):  # A then C
        for i, j in sym_support:
            m = np.zeros((size, size))
            m[off + i, off + j] = m[off + j, off + i] = 1.0
            mats.append(m)
            cost.append(0.0)
            trace_row.append(1.0 if i == j else 0.0)
            seed.append(1.0 / size if i == j else 0.0)
    for i, j in b_support:
        m = np.zeros((size, size))
        m[i, n + j] = m[n + j, i] = 1.0
        mats.append(m)
        cost.append(-2.0 * x[i, j])
        trace_row.append(0.0)
        seed.append(0.0)
    prob = LmiProblem(c=np.array(cost), F0=[np.zeros((size, size))], F=[np.stack(mats)],
                      eq_A=np.array([trace_row]), eq_b=[1.0], x0=np.array(seed))
    sol = solve(prob, settings).raise_for_status()
    blocks = np.tensordot(sol.x, prob.F[0], axes=1)
    return Value(-sol.primal_objective, {"A": blocks[:n, :n], "B": blocks[:n, n:], "C": blocks[n:, n:],
                                         "iterations": sol.iterations, "gap": sol.gap})


# --- Schur multiplier norm -----------------------------------------------------------

def schur_norm(m, settings: Optional[SolverSettings] = None) -> Value:
    """Norm of the Schur multiplier X -> M o X on (M_n, operator norm).

    Uses the factorisation characterisation: ||S_M|| <= t iff there are PSD
    P, Q with ``[[P, M], [M^T, Q]] >= 0`` and all diagonal entries of P and Q
    at most t. Minimises t.
    """
    m = np.asarray(m, dtype=float)
    r, c = m.shape
    size = r + c
    upper = [(i, j) for i in range(size) for j in range(i, size) if (i < r) == (j < r)]
    nv = 1 + len(upper)
    big = np.zeros((nv, size, size))
    diag = np.zeros((nv, size, size))
    diag[0] = np.eye(size)
    for k, (i, j) in enumerate(upper, start=1):
        big[k, i, j] = big[k, j, i] = 1.0
        if i == j:
            diag[k, i, i] = -1.0
    f0 = np.zeros((size, size))
    f0[:r, r:] = m
    f0[r:, :r] = m.T
    s0 = float(np.linalg.norm(m)) + 1.0
    seed = np.zeros(nv)
    seed[0] = s0 + 1.0
    for k, (i, j) in enumerate(upper, start=1):
        if i == j:
            seed[k] = s0
    cost = np.zeros(nv)
    cost[0] = 1.0
    prob = LmiProblem(c=cost, F0=[f0, np.zeros((size, size))], F=[big, diag], x0=seed)
    sol = solve(prob, settings).raise_for_status()
    gram = np.tensordot(sol.x, big, axes=1)
    return Value(sol.primal_objective, {"P": gram[:r, :r], "Q": gram[r:, r:],
                                        "iterations": sol.iterations, "gap": sol.gap})


def gamma(g: Graph, settings: Optional[SolverSettings] = None) -> Value:
    """Schur multiplier norm of R_G, i.e. the norm of the projection M_n -> S_G."""
    return schur_norm(gc.r_matrix(g), settings)


# --- the trace-zero diagonal kernel ---------------------------------------------------

def theta_diag_kernel(n: int) -> Value:
    """sup ||I + J|| over diagonal J with Tr J = 0 and I + J >= 0.

    With d = diag(I + J) this is the linear program: maximise max_k d_k over
    d >= 0 with sum d = n. For each k the optimum puts every other entry at
    its lower bound, so it is solved exactly in rational arithmetic.
    """
    if n < 1:
        raise ValueError("n must be positive")
    best, witness = None, None
    for k in range(n):
        d = [Fraction(0)] * n
        d[k] = Fraction(n) - sum(d[:k] + d[k + 1:])
        if best is None or d[k] > best:
            best, witness = d[k], d
    j = np.diag([float(v - 1) for v in witness])
    return Value(float(best), {"J": j, "exact": best})


# --- distortion -------------------------------------------------------------------------

def is_degenerate(sigma_value, x, floor: float = RATIO_FLOOR) -> bool:
    """True when sigma(G, X) is indistinguishable from zero at solver accuracy."""
    return float(sigma_value) < floor * max(1.0, linalg.operator_norm(x))


def distortion_ratio(g: Graph, x, settings: Optional[SolverSettings] = None,
                     floor: float = RATIO_FLOOR) -> Value:
    """d_inf(G, X) / sigma(G, X) for a single X (a lower bound on the distortion)."""
    num = d_inf(g, x, settings)
    den = sigma(g, x, settings)
    if is_degenerate(den, x, floor):
        raise DegenerateQuotient(f"sigma = {float(den):.3e} is below {floor:g} * max(1, ||X||); "
                                 "X is in S_G^perp")
    return Value(num / den, {"d_inf": float(num), "sigma": float(den)})


def bipartite_witness(g: Graph, side1: Iterable[int], side2: Iterable[int]) -> np.ndarray:
    """0/1 matrix with ones exactly on side1 x side2 (1-based vertex sets).

    The sides must span an induced complete bipartite subgraph.
    """
    a = sorted(int(v) - 1 for v in side1)
    b = sorted(int(v) - 1 for v in side2)
    if any(not 0 <= v < g.n for v in a + b):
        raise NotInducedBipartite("vertex outside the graph")
    if not gc.is_induced_complete_bipartite(g, a, b):
        raise NotInducedBipartite(f"{[v + 1 for v in a]} / {[v + 1 for v in b]} do not span an "
                                  "induced complete bipartite subgraph")
    x = np.zeros((g.n, g.n))
    x[np.ix_(a, b)] = 1.0
    return x


def bipartite_osy_certificate(g: Graph, side1: Iterable[int], side2: Iterable[int]) -> np.ndarray:
    """The block matrix [[I + K, X], [X^T, I + R]] showing sigma(G, X) <= 1.

    K (resp. R) is all ones off the diagonal inside side1 (resp. side2); both
    live on non-edges because each side is independent.
    """
    x = bipartite_witness(g, side1, side2)
    n = g.n
    k = np.zeros((n, n))
    r = np.zeros((n, n))
    a = [int(v) - 1 for v in side1]
    b = [int(v) - 1 for v in side2]
    k[np.ix_(a, a)] = 1.0
    r[np.ix_(b, b)] = 1.0
    np.fill_diagonal(k, 0.0)
    np.fill_diagonal(r, 0.0)
    eye = np.eye(n)
    return np.block([[eye + k, x], [x.T, eye + r]])


def distortion_bounds(g: Graph, observed_ratios: Iterable[float] = (), theta_value=None,
                      settings: Optional[SolverSettings] = None) -> tuple[float, float]:
    """Interval [lower, upper] for delta(M_n, S_G^perp); never a point value.

    Lower: best of the observed ratios and sqrt(pq) over induced K_{p,q}.
    Upper: theta(G).
    """
    lower = max([1.0, *[float(r) for r in observed_ratios]])
    if g.num_edges:
        lower = max(lower, gc.induced_bipartite_max(g)[2])
    upper = float(theta(g, settings)) if theta_value is None else float(theta_value)
    return lower, upper


# --- identity checks ----------------------------------------------------------------------

@dataclass
class StabilityCheck:
    theta_G: float
    theta_product: float
    residual: float


def theta_stability_check(g: Graph, p: int, settings: Optional[SolverSettings] = None,
                          cap: int = PRODUCT_CAP) -> StabilityCheck:
    """Compare theta(G) with theta(G x K_p) (strong product)."""
    if g.n * p > cap:
        raise SizeCapExceeded(f"{g.n} * {p} vertices exceeds the cap {cap}")
    t1 = float(theta(g, settings))
    t2 = float(theta(gc.strong_product(g, gc.complete(p)), settings))
    return StabilityCheck(t1, t2, abs(t2 - t1))


@dataclass
class ProductCheck:
    d_inf_G: float
    d_inf_H: float
    d_inf_product: float
    sigma_G: float
    sigma_H: float
    sigma_product: float

    @property
    def d_inf_residual(self) -> float:
        return abs(self.d_inf_product - self.d_inf_G * self.d_inf_H)

    @property
    def sigma_residual(self) -> float:
        return abs(self.sigma_product - self.sigma_G * self.sigma_H)

    def as_dict(self) -> dict:
        out = {k: float(v) for k, v in self.__dict__.items()}
        out.update(d_inf_residual=self.d_inf_residual, sigma_residual=self.sigma_residual)
        return out


def product_check(g: Graph, h: Graph, x, y, settings: Optional[SolverSettings] = None,
                  cap: int = PRODUCT_CAP, factors: Optional[tuple] = None) -> ProductCheck:
    """Evaluate both quotient norms on G, H and on the strong product with X (x) Y.

    ``factors`` may carry precomputed ``(d_inf_G, sigma_G, d_inf_H, sigma_H)``.
    """
    if g.n * h.n > cap:
        raise SizeCapExceeded(f"product on {g.n * h.n} vertices exceeds the cap {cap}")
    x = _square(g, x)
    y = _square(h, y)
    if factors is None:
        factors = (d_inf(g, x, settings), sigma(g, x, settings),
                   d_inf(h, y, settings), sigma(h, y, settings))
    dg, sg, dh, sh = (float(v) for v in factors)
    gh = gc.strong_product(g, h)
    xy = linalg.kron(x, y)
    return ProductCheck(dg, dh, float(d_inf(gh, xy, settings)),
                        sg, sh, float(sigma(gh, xy, settings)))


# --- reports ---------------------------------------------------------------------------------

@dataclass
class Flag:
    """One inequality check. ``holds`` is None when its hypothesis is not met."""

    name: str
    holds: Optional[bool]
    residual: float
    applicable: bool = True
    detail: str = ""

    def as_dict(self):
        return {"name": self.name, "holds": self.holds, "residual": float(self.residual),
                "applicable": self.applicable, "detail": self.detail}


@dataclass
class ParameterReport:
    graph_hash: str
    n: int
    edges: list
    values: dict = field(default_factory=dict)
    certificates: dict = field(default_factory=dict)
    flags: list = field(default_factory=list)
    distortion_bounds: Optional[tuple] = None

    def flag(self, name) -> Flag:
        for f in self.flags:
            if f.name == name:
                return f
        raise KeyError(name)

    def as_dict(self) -> dict:
        certs = {}
        for name, cert in self.certificates.items():
            certs[name] = {k: (linalg.format_matrix(v) if isinstance(v, np.ndarray) and v.ndim == 2
                               else _plain(v)) for k, v in cert.items()}
        out = {"graph_hash": self.graph_hash, "n": self.n,
               "edges": [list(e) for e in self.edges],
               "values": {k: float(v) for k, v in self.values.items()},
               "certificates": certs,
               "flags": [f.as_dict() for f in self.flags]}
        if self.distortion_bounds is not None:
            out["distortion_bounds"] = [float(v) for v in self.distortion_bounds]
        return out


def _plain(v):
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, np.ndarray):
        return v.tolist()
    return v


def graph_hash(g: Graph) -> str:
    canon = gc.canonical_form(g)
    if canon is not None:
        return "g6:" + canon
    return "labeled-g6:" + gc.to_graph6(g)


def sandwich_report(g: Graph, x=None, settings: Optional[SolverSettings] = None,
                    flag_tol: float = FLAG_TOL) -> ParameterReport:
    """All parameters of G at X (default R_G) and the sandwich-type inequality flags."""
    r = gc.r_matrix(g)
    x = r if x is None else _square(g, x)
    omega = gc.clique_number(g)
    chi = gc.chromatic_number(g)
    lam1 = linalg.lambda_max(gc.adjacency(g))
    th = theta(g, settings)
    thb = theta_bar(g, settings)
    gam = gamma(g, settings)
    dinf = d_inf(g, x, settings)
    sig = sigma(g, x, settings)
    ratio = float("nan") if is_degenerate(sig, x) else dinf / sig
    phi = gc.induced_bipartite_max(g)[2] if g.n <= gc.BIPARTITE_CAP else float("nan")
    wilf = 1.0 + lam1
    dinf_r = dinf if x is r else d_inf(g, r, settings)

    values = {"theta": float(th), "theta_bar": float(thb), "d_inf": float(dinf),
              "sigma": float(sig), "gamma": float(gam), "omega": float(omega),
              "chi": float(chi), "phi_induced": float(phi), "ratio": float(ratio),
              "wilf_bound": wilf, "lambda1": lam1, "d_inf_RG": float(dinf_r)}
    certs = {"theta": th.certificate, "theta_bar": thb.certificate, "gamma": gam.certificate,
             "d_inf": dinf.certificate, "sigma": sig.certificate}

    eq_res = abs(float(thb) - float(dinf_r))
    equality = eq_res <= flag_tol
    flags = [
        Flag("sandwich_classic", None, max(omega - thb, thb - chi)),
        Flag("wilf", None, chi - wilf),
        Flag("equality_case", equality, eq_res, detail="theta_bar == d_inf(G, R_G)"),
        Flag("new_sandwich_lower", None, chi / gam - thb, applicable=equality),
        Flag("spectral_lower", None, wilf / gam - thb, applicable=equality),
        Flag("theta2_corollary", None, eq_res, applicable=float(th) <= 2 + flag_tol,
             detail="theta(G) <= 2 implies the equality case"),
    ]
    for f in flags:
        if f.name == "equality_case":
            continue
        if not f.applicable:
            f.holds = None
        elif f.name == "theta2_corollary":
            f.holds = equality
        else:
            f.holds = f.residual <= flag_tol
    bounds = distortion_bounds(g, [ratio] if math.isfinite(ratio) else [], theta_value=th)
    return ParameterReport(graph_hash(g), g.n, g.edge_list(), values, certs, flags, bounds)
