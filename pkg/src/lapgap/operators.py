"""Oriented cochain bases, coboundary matrices, and reduced Laplacian assembly.

All matrices are assembled in exact int64 arithmetic; floating point enters
only at eigendecomposition (see :mod:`lapgap.spectral`).  The canonical
orientation of every face is its sorted vertex order, so the boundary
operator is realized as the plain matrix transpose of the coboundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import IO, Iterator, Sequence

import numpy as np

from .complexes import Simplex, SimplicialComplex, degree, simplex
from .errors import InputError, SizeLimitError

MAX_DENSE_BASIS = 5000


@dataclass(frozen=True)
class OrientedBasis:
    """Lexicographically ordered k-faces with their positions; reproducible."""

    k: int
    simplices: tuple[Simplex, ...]
    index: dict[Simplex, int]

    def __len__(self) -> int:
        return len(self.simplices)


def oriented_basis(X: SimplicialComplex, k: int) -> OrientedBasis:
    """Basis of the k-cochain space; the single element () when k = -1."""
    if k < -1:
        raise InputError(f"dimension k={k} must be >= -1")
    faces = X.faces(k)
    return OrientedBasis(k, faces, {s: i for i, s in enumerate(faces)})


@dataclass(frozen=True)
class OperatorMatrix:
    """Integer matrix indexed by oriented face bases on rows and columns."""

    rows: OrientedBasis
    cols: OrientedBasis
    mat: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return self.mat.shape

    def entry(self, sigma: Sequence[int], tau: Sequence[int]) -> int:
        return int(self.mat[self.rows.index[simplex(sigma)], self.cols.index[simplex(tau)]])

    def dump(self, stream: IO[str]) -> None:
        """Plain-text dump: 'rows cols' then 'i j value' per nonzero, row-major."""
        r, c = self.mat.shape
        stream.write(f"{r} {c}\n")
        for i in range(r):
            for j in range(c):
                v = self.mat[i, j]
                if v:
                    stream.write(f"{i} {j} {int(v)}\n")

    def dumps(self) -> str:
        import io

        buf = io.StringIO()
        self.dump(buf)
        return buf.getvalue()


def _check_cap(*bases: OrientedBasis) -> None:
    for b in bases:
        if len(b) > MAX_DENSE_BASIS:
            raise SizeLimitError(
                f"basis of dimension {b.k} has {len(b)} elements, over the dense cap {MAX_DENSE_BASIS}"
            )


def sign(sigma: Sequence[int], tau: Sequence[int]) -> int:
    """Parity (+1/-1) of the permutation sending sigma to (sigma \\ tau, tau).

    Both faces are taken in canonical sorted order; for a codimension-1
    face tau = sigma minus its i-th vertex this equals (-1)**i.
    """
    s = simplex(sigma)
    t = simplex(tau)
    pos = {v: i for i, v in enumerate(s)}
    try:
        tpos = [pos[v] for v in t]
    except KeyError:
        raise InputError(f"{t} is not a subset of {s}") from None
    tset = set(tpos)
    inversions = 0
    for p in range(len(s)):
        if p in tset:
            continue
        inversions += sum(1 for q in tpos if q < p)
    return -1 if inversions & 1 else 1


def coboundary_matrix(X: SimplicialComplex, k: int) -> OperatorMatrix:
    """Signed incidence matrix from k-faces (columns) to (k+1)-faces (rows)."""
    if not -1 <= k <= X.dim:
        raise InputError(f"k={k} outside -1..{X.dim}")
    rows = oriented_basis(X, k + 1)
    cols = oriented_basis(X, k)
    _check_cap(rows, cols)
    mat = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for i, s in enumerate(rows.simplices):
        for drop in range(len(s)):
            tau = s[:drop] + s[drop + 1 :]
            mat[i, cols.index[tau]] = -1 if drop & 1 else 1
    return OperatorMatrix(rows, cols, mat)


def laplacian(X: SimplicialComplex, k: int) -> OperatorMatrix:
    """Reduced k-Laplacian assembled by composing coboundaries and transposes."""
    if not -1 <= k <= X.dim:
        raise InputError(f"k={k} outside -1..{X.dim}")
    up = coboundary_matrix(X, k)
    mat = up.mat.T @ up.mat
    if k >= 0:
        down = coboundary_matrix(X, k - 1)
        mat = mat + down.mat @ down.mat.T
    return OperatorMatrix(up.cols, up.cols, mat)


def _shared_facet_pairs(
    X: SimplicialComplex, k: int, basis: OrientedBasis
) -> Iterator[tuple[int, int, Simplex]]:
    """Unordered pairs of k-faces meeting in a (k-1)-face, with that face.

    Every pair with |intersection| = k is produced exactly once, grouped by
    the common face.
    """
    verts = X.vertices()
    for rho in X.faces(k - 1):
        rset = set(rho)
        cof = []
        for v in verts:
            if v in rset:
                continue
            eta = tuple(sorted(rho + (v,)))
            idx = basis.index.get(eta)
            if idx is not None:
                cof.append(idx)
        cof.sort()
        for i, j in combinations(cof, 2):
            yield i, j, rho


def laplacian_entry(X: SimplicialComplex, sigma: Sequence[int], tau: Sequence[int]) -> int:
    """Single Laplacian entry from degrees and orientation signs alone."""
    s = simplex(sigma)
    t = simplex(tau)
    if len(s) != len(t):
        raise InputError(f"faces {s} and {t} have different dimensions")
    if s not in X or t not in X:
        raise InputError("both faces must belong to the complex")
    k = len(s) - 1
    if s == t:
        return degree(X, s) + k + 1
    inter = tuple(sorted(set(s) & set(t)))
    if len(inter) != k:
        return 0
    union = tuple(sorted(set(s) | set(t)))
    if union in X:
        return 0
    return sign(s, inter) * sign(t, inter)


def laplacian_entrywise(X: SimplicialComplex, k: int) -> OperatorMatrix:
    """Reduced k-Laplacian assembled entry by entry from the closed form.

    Independent of :func:`laplacian`; the two are cross-checked in tests.
    """
    if not 0 <= k <= X.dim:
        raise InputError(f"k={k} outside 0..{X.dim}")
    basis = oriented_basis(X, k)
    _check_cap(basis)
    m = len(basis)
    mat = np.zeros((m, m), dtype=np.int64)
    for i, s in enumerate(basis.simplices):
        mat[i, i] = degree(X, s) + k + 1
    for i, j, rho in _shared_facet_pairs(X, k, basis):
        s, t = basis.simplices[i], basis.simplices[j]
        union = tuple(sorted(set(s) | set(t)))
        if union in X:
            continue
        val = sign(s, rho) * sign(t, rho)
        mat[i, j] = val
        mat[j, i] = val
    return OperatorMatrix(basis, basis, mat)


@dataclass(frozen=True)
class BochnerSplit:
    """Decomposition L_k = D + K with K = H @ H.T the signed-graph Laplacian.

    ``edges`` lists the index pairs (into the row basis) carrying the
    signed graph on the k-faces; ``H`` is its incidence matrix.
    """

    D: OperatorMatrix
    K: OperatorMatrix
    H: np.ndarray
    edges: tuple[tuple[int, int], ...]

    @property
    def basis(self) -> OrientedBasis:
        return self.D.rows


def bochner_split(X: SimplicialComplex, k: int) -> BochnerSplit:
    """Split the k-Laplacian into a degree diagonal plus a signed-graph Laplacian."""
    if not 0 <= k <= X.dim:
        raise InputError(f"k={k} outside 0..{X.dim}; the split needs k >= 0")
    basis = oriented_basis(X, k)
    _check_cap(basis)
    m = len(basis)

    edges: list[tuple[int, int]] = []
    entries: list[tuple[int, int, int, int]] = []  # (i, j, sign_i, sign_j)
    for i, j, rho in _shared_facet_pairs(X, k, basis):
        s, t = basis.simplices[i], basis.simplices[j]
        union = tuple(sorted(set(s) | set(t)))
        if union in X:
            continue
        entries.append((i, j, sign(s, rho), sign(t, rho)))
        edges.append((i, j))

    H = np.zeros((m, len(edges)), dtype=np.int64)
    for e, (i, j, si, sj) in enumerate(entries):
        H[i, e] = si
        H[j, e] = sj
    K = H @ H.T

    diag = np.zeros(m, dtype=np.int64)
    for i, s in enumerate(basis.simplices):
        facet_deg = sum(degree(X, s[:d] + s[d + 1 :]) for d in range(len(s)))
        diag[i] = 2 * (k + 1) + (k + 2) * degree(X, s) - facet_deg
    D = np.diag(diag)

    return BochnerSplit(
        D=OperatorMatrix(basis, basis, D),
        K=OperatorMatrix(basis, basis, K),
        H=H,
        edges=tuple(edges),
    )


def offdiag_abs_row_sum(
    X: SimplicialComplex, k: int, sigma: Sequence[int]
) -> tuple[int, int]:
    """Off-diagonal absolute row sum of L_k at sigma, twice.

    Returns ``(direct, from_degrees)``: the sum read off the assembled
    matrix, and the same quantity predicted from face degrees,
    sum(deg(tau) over facets tau of sigma) - (k+1)(deg(sigma)+1).
    The two must agree for every face.
    """
    if k < 0:
        raise InputError("row sums need k >= 0")
    s = simplex(sigma)
    if s not in X or len(s) != k + 1:
        raise InputError(f"{s} is not a {k}-face of the complex")
    L = laplacian(X, k)
    i = L.rows.index[s]
    direct = int(np.abs(L.mat[i]).sum() - abs(L.mat[i, i]))
    facet_deg = sum(degree(X, s[:d] + s[d + 1 :]) for d in range(len(s)))
    from_degrees = facet_deg - (k + 1) * (degree(X, s) + 1)
    return direct, from_degrees
