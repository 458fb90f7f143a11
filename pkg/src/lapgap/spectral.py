"""Eigenvalues, spectral gaps, Betti numbers, and join-spectrum composition.

Betti numbers are computed twice, by counting near-zero eigenvalues and by
exact rank over a large prime field; a disagreement raises
:class:`~lapgap.errors.IntegrityError` instead of being resolved silently.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import comb
from typing import Iterable, Mapping, Sequence

import numpy as np

from .complexes import SimplicialComplex
from .errors import DomainError, InputError, IntegrityError
from .operators import OperatorMatrix, coboundary_matrix, laplacian

DEFAULT_GROUP_TOL = 1e-8
ZERO_EIG_TOL = 1e-7
PSD_TOL = 1e-9
RANK_PRIME = 2**31 - 1


@dataclass(frozen=True)
class Spectrum:
    """Sorted real eigenvalue multiset with a grouping tolerance."""

    values: tuple[float, ...]
    tol: float = DEFAULT_GROUP_TOL

    @property
    def size(self) -> int:
        return len(self.values)

    def min(self) -> float:
        if not self.values:
            raise DomainError("empty spectrum has no minimum")
        return self.values[0]

    def groups(self) -> tuple[tuple[float, int], ...]:
        """(value, multiplicity) pairs, grouping runs of nearly equal values."""
        out: list[tuple[float, int]] = []
        for v in self.values:
            if out and abs(v - out[-1][0]) <= self.tol:
                out[-1] = (out[-1][0], out[-1][1] + 1)
            else:
                out.append((v, 1))
        return tuple(out)

    def count_below(self, threshold: float) -> int:
        return int(sum(1 for v in self.values if v < threshold))


def spectrum_of(values: Iterable[float], tol: float = DEFAULT_GROUP_TOL) -> Spectrum:
    return Spectrum(tuple(sorted(float(v) for v in values)), tol)


def multiset_close(a: Iterable[float], b: Iterable[float], tol: float = 1e-8) -> bool:
    """Whether two real multisets agree elementwise after sorting."""
    xs = sorted(float(v) for v in a)
    ys = sorted(float(v) for v in b)
    return len(xs) == len(ys) and all(abs(x - y) <= tol for x, y in zip(xs, ys))


def eigenvalues(M: OperatorMatrix | np.ndarray, tol: float = DEFAULT_GROUP_TOL) -> Spectrum:
    """Full ascending spectrum of a symmetric matrix."""
    arr = M.mat if isinstance(M, OperatorMatrix) else np.asarray(M)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InputError(f"expected a square matrix, got shape {arr.shape}")
    if arr.size:
        scale = max(1.0, float(np.abs(arr).max()))
        if float(np.abs(arr - arr.T).max()) > 1e-12 * scale:
            raise InputError("matrix is not symmetric")
    vals = np.linalg.eigvalsh(arr.astype(np.float64)) if arr.size else np.zeros(0)
    return Spectrum(tuple(float(v) for v in vals), tol)


def spectral_gap(X: SimplicialComplex, k: int) -> float:
    """Smallest eigenvalue of the reduced k-Laplacian.

    For k = -1 the value is the vertex count, returned exactly without
    invoking the eigensolver.
    """
    if not -1 <= k <= X.dim:
        raise DomainError(f"spectral gap undefined for k={k} (no k-faces)")
    if k == -1:
        return float(X.num_vertices)
    spec = eigenvalues(laplacian(X, k))
    mu = spec.min()
    if mu < -PSD_TOL:
        raise IntegrityError(f"Laplacian has eigenvalue {mu} < -{PSD_TOL}; not PSD")
    return mu


def skeleton_spectrum(n: int, k: int, i: int) -> Spectrum:
    """Closed-form spectrum of the i-Laplacian of the k-skeleton on n vertices.

    For i < k the spectrum is n with multiplicity C(n, i+1); for i = k it is
    0 with multiplicity C(n-1, k+1) together with n with multiplicity C(n-1, k).
    """
    if not -1 <= i <= k <= n - 1:
        raise InputError(f"need -1 <= i <= k <= n-1, got n={n}, k={k}, i={i}")
    if i < k:
        vals = [float(n)] * comb(n, i + 1)
    else:
        # at k = -1 the second multiplicity C(n-1, k) is zero by convention
        zeros = comb(n - 1, k + 1)
        tops = comb(n - 1, k) if k >= 0 else 0
        vals = [0.0] * zeros + [float(n)] * tops
    return Spectrum(tuple(sorted(vals)))


def rank_mod_p(mat: np.ndarray, p: int = RANK_PRIME) -> int:
    """Exact rank of an integer matrix over the field with p elements."""
    a = np.asarray(mat, dtype=np.int64) % p
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if a[i, c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        below = np.nonzero(a[r + 1 :, c])[0]
        if below.size:
            idx = below + r + 1
            a[idx] = (a[idx] - np.outer(a[idx, c], a[r])) % p
        r += 1
        if r == rows:
            break
    return r


def betti(X: SimplicialComplex, k: int, zero_tol: float = ZERO_EIG_TOL) -> int:
    """Reduced Betti number via the Laplacian kernel, cross-checked exactly.

    The eigenvalue count below ``zero_tol`` must match the prime-field rank
    computation |X(k)| - rank(up coboundary) - rank(down coboundary).
    """
    if not -1 <= k <= X.dim:
        raise DomainError(f"betti undefined for k={k} (no k-faces)")
    numeric = eigenvalues(laplacian(X, k)).count_below(zero_tol)
    up = coboundary_matrix(X, k)
    rank_down = rank_mod_p(coboundary_matrix(X, k - 1).mat) if k >= 0 else 0
    exact = len(X.faces(k)) - rank_mod_p(up.mat) - rank_down
    if numeric != exact:
        raise IntegrityError(
            f"betti mismatch at k={k}: kernel count {numeric} vs field rank {exact}"
        )
    return exact


def spectrum_table(X: SimplicialComplex) -> dict[int, Spectrum]:
    """Spectra of all Laplacians, keyed by dimension -1..dim."""
    table: dict[int, Spectrum] = {-1: Spectrum((float(X.num_vertices),))}
    for k in range(0, X.dim + 1):
        table[k] = eigenvalues(laplacian(X, k))
    return table


def join_spectrum(
    factor_tables: Sequence[Mapping[int, Spectrum | Sequence[float]]], k: int
) -> Spectrum:
    """Spectrum of a join composed from its factors' per-dimension spectra.

    Takes the multiset union, over all dimension splits i_1 + ... + i_m =
    k - m + 1 with -1 <= i_j <= dim(factor j), of the sumsets of the factor
    spectra.
    """
    m = len(factor_tables)
    if m == 0:
        raise InputError("need at least one factor")
    dims = []
    for t in factor_tables:
        ks = sorted(t.keys())
        if not ks or ks[0] != -1 or ks != list(range(-1, ks[-1] + 1)):
            raise InputError("each factor table must cover dimensions -1..dim")
        dims.append(ks[-1])

    def vals(j: int, i: int) -> tuple[float, ...]:
        entry = factor_tables[j][i]
        return entry.values if isinstance(entry, Spectrum) else tuple(float(v) for v in entry)

    target = k - m + 1
    out: list[float] = []

    def rec(j: int, remaining: int, sums: list[float]) -> None:
        if j == m:
            if remaining == 0:
                out.extend(sums)
            return
        rest_min = -(m - j - 1)
        rest_max = sum(dims[j + 1 :])
        lo = max(-1, remaining - rest_max)
        hi = min(dims[j], remaining - rest_min)
        for i in range(lo, hi + 1):
            vs = vals(j, i)
            rec(j + 1, remaining - i, [s + v for s in sums for v in vs])

    rec(0, target, [0.0])
    if not out:
        warnings.warn(f"k={k} outside the joint dimension range; empty spectrum")
    return spectrum_of(out)


@dataclass(frozen=True)
class ProfileRow:
    k: int
    gap: float
    betti: int
    spectrum: Spectrum


@dataclass(frozen=True)
class SpectralProfile:
    """Per-dimension gaps, Betti numbers and spectra of one complex."""

    n: int
    dim: int
    rows: tuple[ProfileRow, ...]


def spectral_profile(X: SimplicialComplex, zero_tol: float = ZERO_EIG_TOL) -> SpectralProfile:
    rows = []
    for k in range(-1, X.dim + 1):
        spec = (
            Spectrum((float(X.num_vertices),))
            if k == -1
            else eigenvalues(laplacian(X, k))
        )
        mu = spec.min()
        if k >= 0 and mu < -PSD_TOL:
            raise IntegrityError(f"Laplacian at k={k} has eigenvalue {mu}; not PSD")
        rows.append(ProfileRow(k=k, gap=mu, betti=betti(X, k, zero_tol), spectrum=spec))
    return SpectralProfile(n=X.n, dim=X.dim, rows=tuple(rows))
