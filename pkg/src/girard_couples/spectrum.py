"""Subspace arithmetic in finite-dimensional matrix algebras.

A subspace of ``M_n(C)`` is stored as an orthonormal basis under the trace
inner product ``<A, B> = tr(A* B)``, i.e. as orthonormal rows of flattened
matrices.  Subalgebras such as block-diagonal ``M_n1 (+) M_n2`` are handled
by carrying an ambient basis; everything (perps, residuals, sampling) is
computed inside the ambient algebra.

In finite dimension every subspace is closed, so the spectrum is simply the
lattice of all subspaces with ``ab = span{AB}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

DEFAULT_TOL = 1e-9
DEFAULT_N_CAP = 4


def _orthonormal_rows(vectors: np.ndarray, tol: float) -> np.ndarray:
    """Orthonormal basis of the row span, with a relative rank cutoff."""
    vectors = np.asarray(vectors, dtype=complex)
    if vectors.size == 0 or vectors.shape[0] == 0:
        return np.zeros((0, vectors.shape[-1]), dtype=complex)
    _, s, vh = np.linalg.svd(vectors, full_matrices=False)
    if s.size == 0 or s[0] == 0:
        return np.zeros((0, vectors.shape[1]), dtype=complex)
    rank = int((s > tol * s[0]).sum())
    return vh[:rank]


def _null_rows(M: np.ndarray, tol: float) -> np.ndarray:
    """Orthonormal basis (as rows) of ``{x | M x = 0}``."""
    ncols = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(ncols, dtype=complex)
    _, s, vh = np.linalg.svd(M, full_matrices=True)
    rank = int((s > tol * s[0]).sum()) if s.size and s[0] > 0 else 0
    return vh[rank:].conj()


@dataclass(frozen=True, eq=False)
class MatrixSubspace:
    n: int
    basis: np.ndarray  # (dim, n*n), orthonormal rows

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def matrices(self) -> np.ndarray:
        return self.basis.reshape(self.dim, self.n, self.n)

    def projector(self) -> np.ndarray:
        return self.basis.T @ self.basis.conj()

    def gram_error(self) -> float:
        if self.dim == 0:
            return 0.0
        g = self.basis.conj() @ self.basis.T
        return float(np.abs(g - np.eye(self.dim)).max())


def containment_error(a: MatrixSubspace, b: MatrixSubspace) -> float:
    """Largest component of a's basis lying outside b (0 iff a is inside b)."""
    if a.dim == 0:
        return 0.0
    resid = a.basis - (a.basis @ b.basis.conj().T) @ b.basis
    return float(np.linalg.norm(resid, axis=1).max())


def subspace_distance(a: MatrixSubspace, b: MatrixSubspace) -> float:
    """Symmetric projection residual; ``inf`` when the dimensions differ."""
    if a.dim != b.dim:
        return float("inf")
    return max(containment_error(a, b), containment_error(b, a))


class MatrixAlgebra:
    """A *-subalgebra of ``M_n(C)`` given by an orthonormal basis (full ``M_n`` by default)."""

    def __init__(self, n: int, basis: np.ndarray | None = None, tol: float = DEFAULT_TOL, blocks: Sequence[int] = ()):
        self.n = n
        self.tol = tol
        self.blocks = tuple(blocks) or (n,)
        self.basis = np.eye(n * n, dtype=complex) if basis is None else np.asarray(basis, dtype=complex)

    @classmethod
    def block_diagonal(cls, dims: Sequence[int], tol: float = DEFAULT_TOL) -> "MatrixAlgebra":
        """``M_n1 (+) ... (+) M_nk`` embedded block-diagonally in ``M_N``."""
        N = int(sum(dims))
        rows = []
        off = 0
        for m in dims:
            for i in range(m):
                for j in range(m):
                    E = np.zeros((N, N), dtype=complex)
                    E[off + i, off + j] = 1
                    rows.append(E.ravel())
            off += m
        return cls(N, np.array(rows), tol=tol, blocks=dims)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def span(self, mats) -> MatrixSubspace:
        vecs = np.asarray(mats, dtype=complex).reshape(-1, self.n * self.n)
        return MatrixSubspace(self.n, _orthonormal_rows(vecs, self.tol))

    def zero(self) -> MatrixSubspace:
        return MatrixSubspace(self.n, np.zeros((0, self.n * self.n), dtype=complex))

    def full(self) -> MatrixSubspace:
        return MatrixSubspace(self.n, self.basis.copy())

    def unit(self) -> MatrixSubspace:
        return self.span([np.eye(self.n)])

    def traceless(self) -> MatrixSubspace:
        """The dualizing element ``d = {C | tr C = 0}``."""
        return self.trace_perp(self.unit())

    def coords(self, a: MatrixSubspace) -> np.ndarray:
        """Coordinates of a's basis in the ambient basis."""
        return a.basis @ self.basis.conj().T

    def product(self, a: MatrixSubspace, b: MatrixSubspace) -> MatrixSubspace:
        A, B = a.matrices(), b.matrices()
        prods = np.einsum("iab,jbc->ijac", A, B).reshape(-1, self.n * self.n)
        return MatrixSubspace(self.n, _orthonormal_rows(prods, self.tol))

    def trace_perp(self, a: MatrixSubspace) -> MatrixSubspace:
        """``{C | tr(AC) = 0 for all A in a}`` inside the ambient algebra."""
        mats = self.basis.reshape(-1, self.n, self.n)
        # M[i, k] = tr(A_i B_k) with B_k the ambient basis
        M = np.einsum("iab,kba->ik", a.matrices(), mats)
        null = _null_rows(M, self.tol)
        return MatrixSubspace(self.n, _orthonormal_rows(null @ self.basis, self.tol))

    def _largest_into(self, a: MatrixSubspace, t: MatrixSubspace, side: str) -> MatrixSubspace:
        mats = self.basis.reshape(-1, self.n, self.n)
        outside = np.eye(self.n * self.n) - t.projector()
        blocks = []
        for A in a.matrices():
            prods = mats @ A if side == "right" else A @ mats  # B_k A or A B_k
            blocks.append(outside @ prods.reshape(-1, self.n * self.n).T)
        if not blocks:
            return self.full()
        M = np.vstack(blocks)
        null = _null_rows(M, self.tol)
        return MatrixSubspace(self.n, _orthonormal_rows(null @ self.basis, self.tol))

    def residual_right(self, a: MatrixSubspace, t: MatrixSubspace) -> MatrixSubspace:
        """``a -> t``: the largest c with ``c a`` inside t."""
        return self._largest_into(a, t, "right")

    def residual_left(self, t: MatrixSubspace, a: MatrixSubspace) -> MatrixSubspace:
        """``t <- a``: the largest c with ``a c`` inside t."""
        return self._largest_into(a, t, "left")

    def random_subspace(self, rng: np.random.Generator, dim: int | None = None) -> MatrixSubspace:
        if dim is None:
            dim = int(rng.integers(0, self.dim + 1))
        coeffs = rng.standard_normal((dim, self.dim)) + 1j * rng.standard_normal((dim, self.dim))
        return MatrixSubspace(self.n, _orthonormal_rows(coeffs @ self.basis, self.tol))

    def random_block_vectors(self, rng: np.random.Generator) -> np.ndarray:
        """Columns spanning a random subspace of each block of ``C^n``."""
        cols = []
        off = 0
        for m in self.blocks:
            k = int(rng.integers(0, m + 1))
            W = np.zeros((self.n, k), dtype=complex)
            W[off:off + m] = rng.standard_normal((m, k)) + 1j * rng.standard_normal((m, k))
            cols.append(W)
            off += m
        return np.hstack(cols)

    def right_ideal(self, V: np.ndarray) -> MatrixSubspace:
        """``P_V A``: matrices of the algebra whose columns lie in span(V)."""
        P = _column_projector(V, self.tol)
        mats = self.basis.reshape(-1, self.n, self.n)
        return self.span(P @ mats)

    def left_ideal(self, W: np.ndarray) -> MatrixSubspace:
        """``A P_W``."""
        P = _column_projector(W, self.tol)
        mats = self.basis.reshape(-1, self.n, self.n)
        return self.span(mats @ P)


def _column_projector(V: np.ndarray, tol: float) -> np.ndarray:
    V = np.asarray(V, dtype=complex)
    if V.size == 0:
        return np.zeros((V.shape[0], V.shape[0]), dtype=complex)
    q = _orthonormal_rows(V.T, tol)  # rows span the column space of V
    return q.T @ q.conj()


# --- module-level API over the full matrix algebra --------------------------------


def full_algebra(n: int, tol: float = DEFAULT_TOL) -> MatrixAlgebra:
    return MatrixAlgebra(n, tol=tol)


def subspace_product(a: MatrixSubspace, b: MatrixSubspace, tol: float = DEFAULT_TOL) -> MatrixSubspace:
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: M_{a.n} and M_{b.n}")
    return full_algebra(a.n, tol).product(a, b)


def trace_perp(a: MatrixSubspace, tol: float = DEFAULT_TOL) -> MatrixSubspace:
    return full_algebra(a.n, tol).trace_perp(a)


def residual_into_d(a: MatrixSubspace, tol: float = DEFAULT_TOL) -> MatrixSubspace:
    """``a -> d`` for the traceless subspace d, solved as a linear system."""
    alg = full_algebra(a.n, tol)
    return alg.residual_right(a, alg.traceless())


# --- sampled Girard checks -------------------------------------------------------------


@dataclass
class SpectrumReport:
    n: int
    blocks: tuple[int, ...]
    samples: int
    seed: int
    tol: float
    results: dict  # check name -> {"passed": bool, "max_error": float, "count": int}

    @property
    def passed(self) -> bool:
        return all(r["passed"] for r in self.results.values())

    @property
    def max_error(self) -> float:
        errs = [r["max_error"] for r in self.results.values() if np.isfinite(r["max_error"])]
        return max(errs, default=0.0)


class _Tally:
    def __init__(self):
        self.results: dict[str, dict] = {}

    def record(self, name: str, ok: bool, err: float = 0.0, witness=None):
        r = self.results.setdefault(name, {"passed": True, "max_error": 0.0, "count": 0, "witness": None})
        r["count"] += 1
        r["max_error"] = max(r["max_error"], float(err)) if np.isfinite(err) else float("inf")
        if not ok and r["passed"]:
            r["passed"] = False
            r["witness"] = witness


def _relative_trace_gap(A: np.ndarray, C: np.ndarray) -> float:
    x, y = np.trace(A @ C), np.trace(C @ A)
    scale = max(1.0, np.linalg.norm(A) * np.linalg.norm(C))
    return float(abs(x - y) / scale)


def run_girard_checks(alg: MatrixAlgebra, samples: int, seed: int) -> SpectrumReport:
    """Sampled verification that the subspace lattice of ``alg`` is a Girard quantale
    with dualizer the traceless subspace and unit ``span{I}``."""
    rng = np.random.default_rng(seed)
    tol = alg.tol
    N = alg.dim
    d = alg.traceless()
    e = alg.unit()
    full = alg.full()
    zero = alg.zero()
    t = _Tally()

    def same(name, x, y, sample):
        err = subspace_distance(x, y)
        t.record(name, err < tol, err, witness={"sample": sample, "dims": [x.dim, y.dim]})

    for k in range(samples):
        a = alg.random_subspace(rng)
        c = alg.random_subspace(rng)
        t.record("orthonormal basis", a.gram_error() < tol, a.gram_error(), {"sample": k})
        pa = alg.trace_perp(a)
        t.record("dim(a) + dim(a^perp) = dim A", a.dim + pa.dim == N, 0.0,
                 {"sample": k, "dims": [a.dim, pa.dim, N]})
        same("a^perp^perp = a", alg.trace_perp(pa), a, k)
        # cyclicity, both on a random pair and on the pair (a, a -> d) where it must hold
        to_d = alg.residual_right(a, d)
        same("a -> d = trace perp", to_d, pa, k)
        d_from = alg.residual_left(d, a)
        same("d <- a = a -> d", d_from, to_d, k)
        for other in (c, to_d):
            ac = containment_error(alg.product(a, other), d) < tol
            ca = containment_error(alg.product(other, a), d) < tol
            t.record("ac in d iff ca in d", ac == ca, 0.0, {"sample": k})
        same("d <- (a -> d) = a", alg.residual_left(d, to_d), a, k)
        same("(d <- a) -> d = a", alg.residual_right(d_from, d), a, k)
        same("span{I} a = a", alg.product(e, a), a, k)
        same("a span{I} = a", alg.product(a, e), a, k)
        b = alg.random_subspace(rng)
        same("(ab)c = a(bc)", alg.product(alg.product(a, b), c), alg.product(a, alg.product(b, c)), k)
        ab = alg.span(np.vstack([a.basis, b.basis])) if a.dim + b.dim else zero
        rev = containment_error(alg.trace_perp(ab), pa)
        t.record("a <= b implies b^perp <= a^perp", rev < tol, rev, {"sample": k})
        if a.dim and c.dim:
            A, C = a.matrices()[0], c.matrices()[0]
            gap = _relative_trace_gap(A, C)
            t.record("tr(AC) = tr(CA)", gap < 1e-12, gap, {"sample": k})
        # ideals: per-block column spaces, so the projector lies in the algebra
        V = alg.random_block_vectors(rng)
        r = alg.right_ideal(V)
        l = alg.left_ideal(V)
        t.record("right ideal: r A in r", containment_error(alg.product(r, full), r) < tol,
                 containment_error(alg.product(r, full), r), {"sample": k})
        t.record("left ideal: A l in l", containment_error(alg.product(full, l), l) < tol,
                 containment_error(alg.product(full, l), l), {"sample": k})
        ann = alg.residual_right(r, zero)  # r -> 0
        t.record("r -> 0 is a left ideal", containment_error(alg.product(full, ann), ann) < tol,
                 containment_error(alg.product(full, ann), ann), {"sample": k})
        same("0 <- (r -> 0) = r", alg.residual_left(zero, ann), r, k)
    return SpectrumReport(alg.n, alg.blocks, samples, seed, tol, t.results)


def check_girard_sampled(n: int, num_samples: int, seed: int, tol: float = DEFAULT_TOL,
                         n_cap: int = DEFAULT_N_CAP) -> SpectrumReport:
    if n < 1 or n > n_cap:
        raise ValueError(f"n must be between 1 and {n_cap}")
    if num_samples < 1:
        raise ValueError("num_samples must be positive")
    return run_girard_checks(MatrixAlgebra(n, tol=tol), num_samples, seed)


def product_algebra_spectrum(dims: Sequence[int],
                             num_samples: int, seed: int, tol: float = DEFAULT_TOL) -> SpectrumReport:
    dims = [int(m) for m in dims]
    if not dims or min(dims) < 1 or sum(m * m for m in dims) > 32:
        raise ValueError("block sizes must be positive with sum of squares at most 32")
    return run_girard_checks(MatrixAlgebra.block_diagonal(dims, tol=tol), num_samples, seed)
