"""Bipartite Hermitian matrices, entanglement witnesses and product-vector searches.

Matrices act on ``C^d1 ⊗ C^d2`` with row index ``a * d2 + b``. All
tolerances are relative to the operator norm, so every verdict is invariant
under positive rescaling of the input.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from conedetect import detection

DEFAULT_TOL = 1e-9
SEESAW_CONV = 1e-12
SEESAW_MAX_ITER = 500
ZERO_TOL = 1e-7
DEDUP_TOL = 1e-6
RANK_TOL = 1e-6
STEP_TOL = 1e-6


class NotHermitianError(ValueError):
    pass


class NotAWitnessError(ValueError):
    pass


class UndecidableError(ValueError):
    """Separability is not decided by partial transposition at this size."""


# ---------------------------------------------------------------------------
# basic matrices


def _dims(A: np.ndarray, dims) -> tuple[int, int]:
    d1, d2 = (int(d) for d in dims)
    if A.shape != (d1 * d2, d1 * d2):
        raise ValueError(f"matrix shape {A.shape} does not match dims {d1}x{d2}")
    return d1, d2


def op_norm(A: np.ndarray) -> float:
    return float(np.max(np.abs(np.linalg.eigvalsh(A)))) if A.size else 0.0


def check_hermitian(A: np.ndarray, atol: float | None = None) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NotHermitianError("matrix must be square")
    scale = max(1.0, float(np.max(np.abs(A)))) if A.size else 1.0
    if atol is None:
        atol = 1e-10 * scale
    if np.max(np.abs(A - A.conj().T), initial=0.0) > atol:
        raise NotHermitianError("matrix is not Hermitian")
    return A


def swap_operator(d: int) -> np.ndarray:
    """Flip operator ``V |a b> = |b a>`` on ``C^d ⊗ C^d``."""
    V = np.zeros((d * d, d * d))
    for a in range(d):
        for b in range(d):
            V[b * d + a, a * d + b] = 1.0
    return V


def max_entangled_projector(d: int) -> np.ndarray:
    """Normalised projector onto ``sum_i |ii> / sqrt(d)``."""
    v = np.eye(d).reshape(d * d) / np.sqrt(d)
    return np.outer(v, v)


def singlet_projector() -> np.ndarray:
    v = np.array([0, 1, -1, 0]) / np.sqrt(2)
    return np.outer(v, v)


def choi_witness() -> np.ndarray:
    """Choi's non-decomposable witness on ``C^3 ⊗ C^3``."""
    W = np.zeros((9, 9))
    for a in range(3):
        W[a * 3 + a, a * 3 + a] = 1.0
        W[a * 3 + (a + 1) % 3, a * 3 + (a + 1) % 3] = 2.0
        for c in range(3):
            if c != a:
                W[a * 3 + a, c * 3 + c] = -1.0
    return W


def partial_transpose(A: np.ndarray, dims) -> np.ndarray:
    """Transpose on the second tensor factor."""
    d1, d2 = _dims(A, dims)
    return A.reshape(d1, d2, d1, d2).transpose(0, 3, 2, 1).reshape(d1 * d2, d1 * d2)


def min_eigenvalue(A: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(check_hermitian(A))[0])


def is_psd(A: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """Positive semidefinite up to ``tol * ||A||``."""
    A = check_hermitian(A)
    ev = np.linalg.eigvalsh(A)
    return bool(ev[0] >= -tol * max(np.max(np.abs(ev)), 1e-300))


def is_ppt(rho: np.ndarray, dims, tol: float = DEFAULT_TOL) -> bool:
    if not is_psd(rho, tol):
        raise ValueError("PPT test needs a positive semidefinite state")
    return is_psd(partial_transpose(np.asarray(rho, dtype=complex), dims), tol)


def separability_small(rho: np.ndarray, dims, tol: float = DEFAULT_TOL) -> bool:
    """Exact separability for 2x2 and 2x3 systems, where it coincides with PPT."""
    d = tuple(int(x) for x in dims)
    if d not in {(2, 2), (2, 3), (3, 2)}:
        raise UndecidableError(f"separability is undecidable by PPT for {d[0]}x{d[1]}")
    return is_ppt(rho, d, tol)


# ---------------------------------------------------------------------------
# product vectors


@dataclass(frozen=True, eq=False)
class ProductVector:
    """Unnormalised ``phi ⊗ psi``."""

    phi: np.ndarray
    psi: np.ndarray

    def __post_init__(self):
        phi = np.asarray(self.phi, dtype=complex).ravel()
        psi = np.asarray(self.psi, dtype=complex).ravel()
        if not np.any(phi) or not np.any(psi):
            raise ValueError("product vector factors must be nonzero")
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "psi", psi)

    @property
    def vector(self) -> np.ndarray:
        return np.kron(self.phi, self.psi)

    @property
    def projector(self) -> np.ndarray:
        v = self.vector
        return np.outer(v, v.conj())

    def normalized(self) -> "ProductVector":
        return ProductVector(self.phi / np.linalg.norm(self.phi), self.psi / np.linalg.norm(self.psi))


def product_expectation(W: np.ndarray, v: ProductVector) -> float:
    """``<phi ⊗ psi| W |phi ⊗ psi>`` (real because ``W`` is Hermitian)."""
    x = v.vector
    if W.shape != (x.size, x.size):
        raise ValueError("dimension mismatch between W and the product vector")
    return float(np.real(np.vdot(x, W @ x)))


def hs_pairing(A: np.ndarray, B: np.ndarray) -> float:
    """Hilbert-Schmidt pairing ``Tr(A B)`` of Hermitian matrices."""
    return float(np.real(np.sum(A.T * B)))


@dataclass
class SeesawRuns:
    """Final state of every start of a batched see-saw."""

    values: np.ndarray
    phis: np.ndarray
    psis: np.ndarray
    history: list[np.ndarray] = field(default_factory=list)
    iterations: int = 0


def _lowest(M: np.ndarray):
    M = 0.5 * (M + np.conj(np.swapaxes(M, -1, -2)))
    ev, U = np.linalg.eigh(M)
    return ev[:, 0], U[:, :, 0]


def _random_unit(rng: np.random.Generator, n: int, d: int) -> np.ndarray:
    z = rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def seesaw_runs(
    W: np.ndarray,
    dims,
    starts: int,
    seed: int = 0,
    max_iter: int = SEESAW_MAX_ITER,
    conv: float = SEESAW_CONV,
    record: bool = False,
) -> SeesawRuns:
    """Alternating minimisation of ``<phi ⊗ psi|W|phi ⊗ psi>`` over unit factors.

    With ``phi`` fixed the best ``psi`` is the lowest eigenvector of the
    contracted ``d2 x d2`` operator, and vice versa; every half-step is exact,
    so the objective never increases. All starts run as one batch.
    """
    if starts < 1:
        raise ValueError("starts must be >= 1")
    d1, d2 = _dims(W, dims)
    W4 = np.asarray(W, dtype=complex).reshape(d1, d2, d1, d2)
    rng = np.random.default_rng(seed)
    phi = _random_unit(rng, starts, d1)
    scale = max(op_norm(W), 1e-300)
    history = []
    prev = np.full(starts, np.inf)
    it = 0
    for it in range(1, max_iter + 1):
        val_psi, psi = _lowest(np.einsum("sa,abcd,sc->sbd", phi.conj(), W4, phi))
        val, phi = _lowest(np.einsum("sb,abcd,sd->sac", psi.conj(), W4, psi))
        if record:
            history.extend([val_psi, val])
        if np.all(prev - val < conv * scale):
            break
        prev = val
    return SeesawRuns(val, phi, psi, history, it)


def seesaw_min_product(W: np.ndarray, dims, starts: int | None = None, seed: int = 0) -> tuple[float, ProductVector]:
    """Best product value found over ``starts`` random starts (an upper bound on the true minimum)."""
    d1, d2 = _dims(W, dims)
    runs = seesaw_runs(W, dims, starts or 64 * d1 * d2, seed)
    i = int(np.argmin(runs.values))
    return float(runs.values[i]), ProductVector(runs.phis[i], runs.psis[i])


# ---------------------------------------------------------------------------
# witnesses


@dataclass(frozen=True)
class WitnessReport:
    min_eigenvalue: float
    min_product_value: float
    classification: str  # "positive" | "witness" | "not_in_W1"
    confidence: str  # "exact" | "heuristic"
    certificate: ProductVector | None = None


def classify_witness(W: np.ndarray, dims, starts: int | None = None, seed: int = 0, tol: float = DEFAULT_TOL) -> WitnessReport:
    W = check_hermitian(W)
    d1, d2 = _dims(W, dims)
    lam_min = float(np.linalg.eigvalsh(W)[0])
    scale = op_norm(W)
    value, v = seesaw_min_product(W, (d1, d2), starts, seed)
    if value < -tol * scale:
        return WitnessReport(lam_min, value, "not_in_W1", "exact", v)
    if lam_min >= -tol * scale:
        return WitnessReport(lam_min, value, "positive", "exact")
    return WitnessReport(lam_min, value, "witness", "heuristic")


def _require_witness(W, dims, starts, seed, tol) -> WitnessReport:
    report = classify_witness(W, dims, starts, seed, tol)
    if report.classification != "witness":
        raise NotAWitnessError(f"matrix classified as {report.classification}, not a witness")
    return report


@dataclass(frozen=True)
class ZeroSet:
    vectors: list[ProductVector]
    values: list[float]
    span_rank: int


def span_rank(vectors: Sequence[ProductVector], rel_tol: float = RANK_TOL) -> int:
    """Numerical rank of the stacked tensor vectors."""
    if not vectors:
        return 0
    M = np.array([v.normalized().vector for v in vectors])
    s = np.linalg.svd(M, compute_uv=False)
    return int(np.sum(s > rel_tol * s[0]))


def zero_product_vectors(W: np.ndarray, dims, starts: int | None = None, seed: int = 0) -> ZeroSet:
    """Product vectors with ``|<v|W|v>| <= 1e-7 ||W||`` found by multistart see-saw.

    No witness precondition; this is the search behind :func:`witness_zero_set`.
    """
    d1, d2 = _dims(W, dims)
    runs = seesaw_runs(W, (d1, d2), starts or 64 * d1 * d2, seed)
    cutoff = ZERO_TOL * op_norm(W)
    kept: list[ProductVector] = []
    projectors: list[np.ndarray] = []
    values: list[float] = []
    for i in range(runs.values.size):
        if abs(runs.values[i]) > cutoff:
            continue
        v = ProductVector(runs.phis[i], runs.psis[i]).normalized()
        P = v.projector
        if any(np.linalg.norm(P - Q) < DEDUP_TOL for Q in projectors):
            continue
        kept.append(v)
        projectors.append(P)
        values.append(abs(product_expectation(W, v)))
    return ZeroSet(kept, values, span_rank(kept))


def witness_zero_set(W: np.ndarray, dims, starts: int | None = None, seed: int = 0, tol: float = DEFAULT_TOL) -> ZeroSet:
    _require_witness(W, dims, starts, seed, tol)
    return zero_product_vectors(W, dims, starts, seed)


# ---------------------------------------------------------------------------
# cone pair W1 ⊃ B+


def _random_psd(rng: np.random.Generator, D: int) -> np.ndarray:
    G = rng.standard_normal((D, D)) + 1j * rng.standard_normal((D, D))
    return G @ G.conj().T / D


class QuantumPair:
    """``L = W1`` (block-positive) over ``K = B+`` (PSD) on ``C^d1 ⊗ C^d2``.

    Membership in ``W1`` is decided by the see-saw search: a negative product
    value is a certificate of non-membership, its absence is heuristic.
    """

    backend = "quantum"

    def __init__(self, dims, starts: int | None = None, seed: int = 0, tol: float = DEFAULT_TOL):
        self.dims = tuple(int(d) for d in dims)
        self.D = self.dims[0] * self.dims[1]
        self.starts = starts or 64 * self.D
        self.seed = seed
        self.tolerance = tol

    def _scale(self, x) -> float:
        return max(op_norm(np.asarray(x)), 1e-300)

    def min_product(self, x) -> float:
        return seesaw_min_product(np.asarray(x, dtype=complex), self.dims, self.starts, self.seed)[0]

    def in_K(self, x) -> bool:
        return is_psd(x, self.tolerance)

    def in_L(self, x) -> bool:
        x = check_hermitian(x)
        return self.min_product(x) >= -self.tolerance * self._scale(x)

    def in_Kstar(self, y) -> bool:
        return is_psd(y, self.tolerance)

    def in_Lstar(self, y) -> bool | None:
        try:
            return is_psd(y, self.tolerance) and separability_small(y, self.dims, self.tolerance)
        except UndecidableError:
            return None

    def pairing(self, y, x) -> float:
        return hs_pairing(np.asarray(y), np.asarray(x))

    def zero_functionals(self, w) -> list[np.ndarray]:
        zs = zero_product_vectors(np.asarray(w, dtype=complex), self.dims, self.starts, self.seed)
        return [v.projector for v in zs.vectors]

    def interior_Kstar_point(self, y) -> bool:
        ev = np.linalg.eigvalsh(check_hermitian(y))
        return bool(ev[0] > RANK_TOL**2 * max(ev[-1], 1e-300))

    def spanning_combination(self, functionals: Sequence) -> tuple[float, ...] | None:
        """Uniform weights work whenever anything does: the sum has full rank iff the vectors span."""
        if not functionals:
            return None
        weights = tuple([1.0 / len(functionals)] * len(functionals))
        if self.interior_Kstar_point(self.lincomb(weights, functionals)):
            return weights
        return None

    def sample_Kstar(self, n: int, seed: int) -> list[np.ndarray]:
        rng = np.random.default_rng(seed)
        vs = _random_unit(rng, n, self.D)
        return [np.outer(v, v.conj()) for v in vs]

    def subtract_search_directions(self, n: int, seed: int, w=None) -> list[np.ndarray]:
        """Identity, projector onto the complement of the zero-set span, then random PSD."""
        dirs = [np.eye(self.D, dtype=complex)]
        if w is not None:
            zs = zero_product_vectors(np.asarray(w, dtype=complex), self.dims, self.starts, self.seed)
            if zs.vectors:
                M = np.array([v.vector for v in zs.vectors])
                _, s, Vh = np.linalg.svd(M)
                r = int(np.sum(s > RANK_TOL * s[0]))
                comp = Vh[r:].conj().T
                if comp.shape[1]:
                    dirs.append(comp @ comp.conj().T)
        rng = np.random.default_rng(seed)
        while len(dirs) < n:
            dirs.append(_random_psd(rng, self.D))
        return dirs[:max(n, 1)]

    def max_step(self, w, k) -> float:
        """Bisection for ``sup {lam : w - lam k in W1}``; returns 0 below the step tolerance."""
        w = np.asarray(w, dtype=complex)
        k = np.asarray(k, dtype=complex)
        base = self._scale(w) / self._scale(k)
        if not self.in_L(w - STEP_TOL * base * k):
            return 0.0
        lo, hi = STEP_TOL * base, base
        for _ in range(64):
            if not self.in_L(w - hi * k):
                break
            lo, hi = hi, 2 * hi
        else:
            return float("inf")
        while hi - lo > 1e-10 * base:
            mid = 0.5 * (lo + hi)
            if self.in_L(w - mid * k):
                lo = mid
            else:
                hi = mid
        return lo if lo > STEP_TOL * base else 0.0

    def order_search(self, w1, w2):
        """Maximise the concave ``g(lam) = lambda_min(w2 - lam w1)`` by golden section."""
        w1 = np.asarray(w1, dtype=complex)
        w2 = np.asarray(w2, dtype=complex)
        top = float(np.linalg.eigvalsh(w1)[-1])
        scale = self._scale(w2)
        if is_psd(w2, self.tolerance):
            return 0.0, w2
        if top <= 0:
            return None

        def g(lam):
            return float(np.linalg.eigvalsh(w2 - lam * w1)[0])

        a, b = 0.0, 2.0 * scale / top + 1.0
        invphi = (np.sqrt(5) - 1) / 2
        c, d = b - invphi * (b - a), a + invphi * (b - a)
        gc, gd = g(c), g(d)
        while b - a > 1e-13 * (1 + b):
            if gc < gd:
                a, c, gc = c, d, gd
                d = a + invphi * (b - a)
                gd = g(d)
            else:
                b, d, gd = d, c, gc
                c = b - invphi * (b - a)
                gc = g(c)
        lam = 0.5 * (a + b)
        if g(lam) < -self.tolerance * scale:
            return None
        return lam, w2 - lam * w1

    def order_counterexample(self, w1, w2):
        return None

    def lincomb(self, coeffs: Sequence, elems: Sequence) -> np.ndarray:
        out = np.zeros((self.D, self.D), dtype=complex)
        for c, e in zip(coeffs, elems):
            out = out + float(c) * np.asarray(e, dtype=complex)
        return out

    def is_zero(self, x) -> bool:
        return op_norm(np.asarray(x)) <= self.tolerance

    def is_zero_pairing(self, y, x) -> bool:
        return abs(self.pairing(y, x)) <= ZERO_TOL * self._scale(x) * max(np.real(np.trace(y)), 1.0)

    def negative(self, value, scale=None) -> bool:
        s = 1.0 if scale is None else self._scale(scale)
        return value < -self.tolerance * s

    def positive(self, value, scale=None) -> bool:
        s = 1.0 if scale is None else self._scale(scale)
        return value > self.tolerance * s


# ---------------------------------------------------------------------------
# optimality in the quantum setting


def witness_optimality(W: np.ndarray, dims, starts: int | None = None, seed: int = 0, tol: float = DEFAULT_TOL, n_directions: int = 8) -> detection.OptimalityVerdict:
    """Spanning and subtraction verdicts for ``W`` in ``W1`` relative to ``B+``.

    A convex combination of zero-set projectors has full rank iff the product
    vectors span ``C^d1 ⊗ C^d2``, so the spanning verdict is a rank test.
    """
    W = check_hermitian(W)
    _require_witness(W, dims, starts, seed, tol)
    pair = QuantumPair(dims, starts, seed, tol)
    return detection.is_optimal(pair, W, n_directions=n_directions, seed=seed)


# name used by the external interface
lkch_optimality = witness_optimality


@dataclass(frozen=True)
class NdCheck:
    """Necessary condition for optimality against decomposable witnesses.

    ``passes`` never certifies nd-optimality; it only fails to rule it out.
    """

    applicable: bool
    w_spanning: bool | None
    wGamma_spanning: bool | None
    passes: bool | None
    explanation: str = ""
    w_span_rank: int | None = None
    wGamma_span_rank: int | None = None


def nd_optimality_necessary(W: np.ndarray, dims, starts: int | None = None, seed: int = 0, tol: float = DEFAULT_TOL) -> NdCheck:
    W = check_hermitian(W)
    d1, d2 = _dims(W, dims)
    _require_witness(W, dims, starts, seed, tol)
    WG = partial_transpose(W, dims)
    if is_psd(WG, tol):
        return NdCheck(
            False, None, None, None,
            "partial transpose is PSD, so W is decomposable and detects no PPT state",
        )
    r1 = zero_product_vectors(W, dims, starts, seed).span_rank
    r2 = zero_product_vectors(WG, dims, starts, seed).span_rank
    full = d1 * d2
    return NdCheck(True, r1 == full, r2 == full, r1 == full and r2 == full, "", r1, r2)


@dataclass(frozen=True)
class WDPairingCheck:
    sampled_ok: bool
    direct_ok: bool

    @property
    def consistent(self) -> bool:
        # a negative sampled pairing is a proof of failure; sampling may only miss one
        return self.sampled_ok or not self.direct_ok

    @property
    def agree(self) -> bool:
        return self.sampled_ok == self.direct_ok


def wd_pairing_check(rho: np.ndarray, dims, samples: int = 256, seed: int = 0, tol: float = DEFAULT_TOL) -> WDPairingCheck:
    """Test ``rho`` against sampled extreme rays ``P`` and ``P^Γ`` of the decomposable cone.

    Cross-checked against the eigenvalue route ``rho >= 0`` and ``rho^Γ >= 0``.
    """
    rho = check_hermitian(rho)
    d1, d2 = _dims(rho, dims)
    scale = max(op_norm(rho), 1e-300)
    rng = np.random.default_rng(seed)
    ok = True
    for v in _random_unit(rng, samples, d1 * d2):
        P = np.outer(v, v.conj())
        if hs_pairing(rho, P) < -tol * scale or hs_pairing(rho, partial_transpose(P, dims)) < -tol * scale:
            ok = False
            break
    direct = is_psd(rho, tol) and is_psd(partial_transpose(rho, dims), tol)
    return WDPairingCheck(ok, direct)


# ---------------------------------------------------------------------------
# faces of the PSD cone


def range_projector(rho: np.ndarray, rel_tol: float = 1e-10) -> np.ndarray:
    ev, U = np.linalg.eigh(check_hermitian(rho))
    Q = U[:, ev > rel_tol * max(ev[-1], 1e-300)]
    return Q @ Q.conj().T


def psd_face_dimension(rho: np.ndarray, rel_tol: float = 1e-10) -> int:
    """Real dimension of the Hermitian matrices ``X`` with ``(1 - P) X = 0``, ``P`` the range projector."""
    d = rho.shape[0]
    Pc = np.eye(d) - range_projector(rho, rel_tol)
    basis = []
    for i in range(d):
        for j in range(i, d):
            E = np.zeros((d, d), dtype=complex)
            E[i, j] = E[j, i] = 1.0
            basis.append(E)
            if i != j:
                F = np.zeros((d, d), dtype=complex)
                F[i, j], F[j, i] = 1j, -1j
                basis.append(F)
    cols = [np.concatenate([(Pc @ B).real.ravel(), (Pc @ B).imag.ravel()]) for B in basis]
    s = np.linalg.svd(np.array(cols).T, compute_uv=False)
    # Pc is a projector and the basis has unit entries, so an absolute cut is scale free
    return len(basis) - int(np.sum(s > 1e-9))


def psd_face_step(rho: np.ndarray, x: np.ndarray, tol: float = 1e-9) -> float:
    """Largest ``alpha`` with ``rho - alpha x`` PSD (bisection on the least eigenvalue)."""
    scale = max(op_norm(rho), 1e-300)

    def ok(a):
        return np.linalg.eigvalsh(rho - a * x)[0] >= -tol * scale

    hi = scale / max(op_norm(x), 1e-300)
    while ok(hi):
        hi *= 2
    lo = 0.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if ok(mid) else (lo, mid)
    return lo


def random_psd_of_rank(d: int, r: int, rng: np.random.Generator) -> np.ndarray:
    G = rng.standard_normal((d, r)) + 1j * rng.standard_normal((d, r))
    return G @ G.conj().T
