"""Dense real matrix kernels: Jacobi eigensolver, norms, products, PSD tests."""

from __future__ import annotations

import numpy as np

from .errors import NotSquare, NotSymmetric, ParseError, ShapeMismatch

SYM_TOL = 1e-8
_MAX_SWEEPS = 60


def _as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=float)
    if a.ndim != 2:
        raise ShapeMismatch(f"expected a 2-d matrix, got shape {a.shape}")
    return a


def check_symmetric(m, sym_tol: float = SYM_TOL) -> np.ndarray:
    """Return the symmetrised copy of ``m`` after checking square and near-symmetric.

    The tolerance is relative to ``max(1, max|m|)``.
    """
    a = _as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise NotSquare(f"matrix of shape {a.shape} is not square")
    scale = max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0
    if a.size and float(np.max(np.abs(a - a.T))) > sym_tol * scale:
        raise NotSymmetric(f"asymmetry {np.max(np.abs(a - a.T)):.3e} exceeds {sym_tol:g}")
    return (a + a.T) / 2


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Rounds of disjoint index pairs covering every pair once (circle method)."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for k in range(m // 2):
            a, b = players[k], players[m - 1 - k]
            if a < n and b < n:
                ps.append(min(a, b))
                qs.append(max(a, b))
        rounds.append((np.array(ps, dtype=int), np.array(qs, dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def sym_eigen(m, sym_tol: float = SYM_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Each round applies a full set of disjoint plane rotations at once
    (round-robin ordering), so a sweep costs ``n - 1`` vectorised updates.
    Returns ``(w, V)`` with ``w`` descending and ``M = V diag(w) V^T``.
    """
    a = check_symmetric(m, sym_tol).copy()
    n = a.shape[0]
    v = np.eye(n)
    if n <= 1:
        return np.diag(a).copy(), v
    rounds = _round_robin(n)
    total = np.linalg.norm(a)
    if total == 0.0:
        return np.zeros(n), v
    for _ in range(_MAX_SWEEPS):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= 1e-15 * total:
            break
        for p, q in rounds:
            apq = a[p, q]
            live = np.abs(apq) > 1e-300
            if not np.any(live):
                continue
            p, q, apq = p[live], q[live], apq[live]
            tau = (a[q, q] - a[p, p]) / (2.0 * apq)
            t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.hypot(1.0, tau))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            colp, colq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = colp * c - colq * s
            a[:, q] = colp * s + colq * c
            rowp, rowq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * rowp - s[:, None] * rowq
            a[q, :] = s[:, None] * rowp + c[:, None] * rowq
            a[p, q] = a[q, p] = 0.0
            vp, vq = v[:, p].copy(), v[:, q].copy()
            v[:, p] = vp * c - vq * s
            v[:, q] = vp * s + vq * c
    w = np.diag(a).copy()
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def eigenvalues(m, sym_tol: float = SYM_TOL) -> np.ndarray:
    return sym_eigen(m, sym_tol)[0]


def lambda_max(m, sym_tol: float = SYM_TOL) -> float:
    return float(eigenvalues(m, sym_tol)[0])


def lambda_min(m, sym_tol: float = SYM_TOL) -> float:
    return float(eigenvalues(m, sym_tol)[-1])


def dilation(m) -> np.ndarray:
    """The symmetric matrix [[0, M], [M^T, 0]]; its eigenvalues are +/- the singular values of M."""
    a = _as_matrix(m)
    r, c = a.shape
    d = np.zeros((r + c, r + c))
    d[:r, r:] = a
    d[r:, :r] = a.T
    return d


def singular_values(m) -> np.ndarray:
    """Singular values of a general real matrix, descending."""
    a = _as_matrix(m)
    k = min(a.shape)
    if k == 0:
        return np.zeros(0)
    w = eigenvalues(dilation(a))
    return np.clip(w[:k], 0.0, None)


def operator_norm(m) -> float:
    a = _as_matrix(m)
    if a.size == 0:
        return 0.0
    return float(singular_values(a)[0])


def trace_norm(m) -> float:
    a = _as_matrix(m)
    if a.size == 0:
        return 0.0
    return float(np.sum(singular_values(a)))


def kron(a, b) -> np.ndarray:
    """Kronecker product; block (i, k) of the result is ``a[i, k] * b``."""
    return np.kron(_as_matrix(a), _as_matrix(b))


def schur_product(a, b) -> np.ndarray:
    a, b = _as_matrix(a), _as_matrix(b)
    if a.shape != b.shape:
        raise ShapeMismatch(f"Schur product needs equal shapes, got {a.shape} and {b.shape}")
    return a * b


def is_psd(m, tol: float = 1e-9, sym_tol: float = SYM_TOL) -> bool:
    return lambda_min(m, sym_tol) >= -tol


def cyclic_average(m, period: int) -> np.ndarray:
    """Average of ``(S^T)^k M S^k`` over k = 0..period-1, S the cyclic forward shift."""
    a = _as_matrix(m)
    if a.shape != (period, period):
        raise ShapeMismatch(f"expected a {period}x{period} matrix, got {a.shape}")
    acc = np.zeros_like(a)
    for k in range(period):
        # (S^T)^k M S^k has (i, j) entry M[i+k, j+k]
        acc += np.roll(a, shift=(-k, -k), axis=(0, 1))
    return acc / period


def random_symmetric(n: int, rng: np.random.Generator, low: float = -1.0,
                     high: float = 1.0) -> np.ndarray:
    """Symmetric matrix with independent uniform entries on and above the diagonal."""
    a = np.triu(rng.uniform(low, high, (n, n)))
    return a + np.triu(a, 1).T


def shift_matrix(n: int) -> np.ndarray:
    """Cyclic forward shift: ``S e_j = e_{j+1 mod n}``."""
    return np.roll(np.eye(n), 1, axis=0)


# --- text format ----------------------------------------------------------

def parse_matrix(text: str) -> np.ndarray:
    """Parse a ``rows cols`` header followed by row-major entries; ``#`` starts a comment."""
    tokens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens.extend((tok, lineno) for tok in line.split())
    if len(tokens) < 2:
        raise ParseError("missing 'rows cols' header", tokens[0][1] if tokens else None)
    try:
        rows, cols = int(tokens[0][0]), int(tokens[1][0])
    except ValueError:
        raise ParseError("header must be two integers", tokens[0][1]) from None
    if rows < 1 or cols < 1:
        raise ParseError("matrix dimensions must be positive", tokens[0][1])
    body = tokens[2:]
    if len(body) != rows * cols:
        where = body[-1][1] if body else tokens[1][1]
        raise ParseError(f"expected {rows * cols} entries, found {len(body)}", where)
    vals = []
    for tok, lineno in body:
        try:
            vals.append(float(tok))
        except ValueError:
            raise ParseError(f"not a number: {tok!r}", lineno) from None
    return np.array(vals).reshape(rows, cols)


def format_matrix(m) -> str:
    a = _as_matrix(m)
    lines = [f"{a.shape[0]} {a.shape[1]}"]
    lines += [" ".join(repr(float(x)) for x in row) for row in a]
    return "\n".join(lines) + "\n"


def read_matrix(path) -> np.ndarray:
    with open(path) as fh:
        return parse_matrix(fh.read())
