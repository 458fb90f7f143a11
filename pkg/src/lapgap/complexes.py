"""Finite simplicial complexes on labeled vertices and their set-level queries.

Faces are canonical tuples of strictly increasing vertex ids.  The empty
face ``()`` has dimension -1 and belongs to every complex.  Complexes are
immutable after construction and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, InputError, SizeLimitError

Simplex = tuple[int, ...]

# missing-face search enumerates all 2^n vertex subsets
_MAX_MISSING_SEARCH = 20


def simplex(vertices: Iterable[int]) -> Simplex:
    """Canonical face (sorted tuple) from a collection of distinct vertex ids."""
    vs = sorted(int(v) for v in vertices)
    if vs and vs[0] < 0:
        raise InputError(f"negative vertex id in {vs}")
    for a, b in zip(vs, vs[1:]):
        if a == b:
            raise InputError(f"duplicate vertex id {a} in face {vs}")
    return tuple(vs)


def face_dim(sigma: Sequence[int]) -> int:
    return len(sigma) - 1


class SimplicialComplex:
    """Immutable downward-closed family of faces with vertex ids in {0..n-1}.

    ``n`` is the ambient id range.  Complexes built by the public
    constructors contain every singleton ``{v}``; subcomplexes produced by
    :func:`link` and :func:`induced` may omit some of them while keeping the
    ambient ids of the parent complex.
    """

    __slots__ = ("n", "_by_dim", "_faces", "_dim")

    def __init__(self, n: int, faces: Iterable[Sequence[int]]):
        if n < 1:
            raise InputError(f"vertex count must be >= 1, got {n}")
        face_set = {simplex(f) for f in faces}
        face_set.add(())
        by_dim: dict[int, list[Simplex]] = {}
        for f in face_set:
            if f and f[-1] >= n:
                raise InputError(f"face {f} references vertex >= n={n}")
            by_dim.setdefault(len(f) - 1, []).append(f)
        # downward closure: checking codimension-1 subsets suffices by induction
        for f in face_set:
            for i in range(len(f)):
                if f[:i] + f[i + 1 :] not in face_set:
                    raise InputError(
                        f"not downward closed: {f} present, {f[:i] + f[i + 1:]} missing"
                    )
        self.n = n
        self._faces = frozenset(face_set)
        self._dim = max(by_dim)
        self._by_dim = {k: tuple(sorted(v)) for k, v in by_dim.items()}

    @property
    def dim(self) -> int:
        return self._dim

    def faces(self, k: int) -> tuple[Simplex, ...]:
        """All k-dimensional faces in lexicographic order; empty outside [-1, dim]."""
        return self._by_dim.get(k, ())

    def __contains__(self, face: Sequence[int]) -> bool:
        return tuple(face) in self._faces

    def all_faces(self) -> Iterator[Simplex]:
        for k in range(-1, self._dim + 1):
            yield from self._by_dim.get(k, ())

    def vertices(self) -> tuple[int, ...]:
        """Ids that actually occur as 0-faces."""
        return tuple(f[0] for f in self.faces(0))

    @property
    def num_vertices(self) -> int:
        return len(self.faces(0))

    @property
    def num_faces(self) -> int:
        return len(self._faces)

    def f_vector(self) -> tuple[int, ...]:
        """Face counts for k = -1 .. dim."""
        return tuple(len(self.faces(k)) for k in range(-1, self._dim + 1))

    def has_full_vertex_set(self) -> bool:
        return self.num_vertices == self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.n == other.n and self._faces == other._faces

    def __hash__(self) -> int:
        return hash((self.n, self._faces))

    def __repr__(self) -> str:
        return f"SimplicialComplex(n={self.n}, dim={self._dim}, faces={len(self._faces)})"


def from_facets(n: int, facets: Iterable[Sequence[int]]) -> SimplicialComplex:
    """Downward closure of the given facets plus all singletons and the empty face."""
    if n < 1:
        raise InputError(f"vertex count must be >= 1, got {n}")
    closure: set[Simplex] = {()}
    closure.update((v,) for v in range(n))
    for facet in facets:
        s = simplex(facet)
        if s and s[-1] >= n:
            raise InputError(f"facet {s} references vertex >= n={n}")
        for r in range(len(s) + 1):
            closure.update(combinations(s, r))
    return SimplicialComplex(n, closure)


def clique_complex(n: int, edges: Iterable[Sequence[int]]) -> SimplicialComplex:
    """Complex whose faces are the cliques of the graph (n, edges)."""
    if n < 1:
        raise InputError(f"vertex count must be >= 1, got {n}")
    adj: dict[int, set[int]] = {v: set() for v in range(n)}
    for e in edges:
        u, w = (int(x) for x in e)
        if u == w:
            raise InputError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= w < n):
            raise InputError(f"edge ({u},{w}) references vertex >= n={n}")
        adj[u].add(w)
        adj[w].add(u)
    faces: set[Simplex] = {()}
    level: list[Simplex] = [(v,) for v in range(n)]
    while level:
        faces.update(level)
        nxt = []
        for c in level:
            common = set(range(c[-1] + 1, n))
            for v in c:
                common &= adj[v]
            for v in sorted(common):
                nxt.append(c + (v,))
        level = nxt
    return SimplicialComplex(n, faces)


def skeleton(m: int, k: int) -> SimplicialComplex:
    """k-dimensional skeleton of the full simplex on m+1 vertices."""
    if not -1 <= k <= m:
        raise InputError(f"skeleton dimension k={k} must satisfy -1 <= k <= m={m}")
    faces = [
        c for size in range(k + 2) for c in combinations(range(m + 1), size)
    ]
    return SimplicialComplex(m + 1, faces)


def full_simplex(m: int) -> SimplicialComplex:
    """The complete complex on m+1 vertices."""
    return skeleton(m, m)


def join(X: SimplicialComplex, Y: SimplicialComplex) -> SimplicialComplex:
    """Join of X and Y; Y's vertex ids are shifted by X.n to stay disjoint."""
    shift = X.n
    faces = []
    y_faces = [tuple(v + shift for v in t) for t in Y.all_faces()]
    for s in X.all_faces():
        for t in y_faces:
            faces.append(s + t)
    return SimplicialComplex(X.n + Y.n, faces)


def link(X: SimplicialComplex, sigma: Sequence[int]) -> SimplicialComplex:
    """Link of sigma in X, on the same ambient id range."""
    s = simplex(sigma)
    if s not in X:
        raise InputError(f"{s} is not a face of the complex")
    sset = set(s)
    faces = []
    for t in X.all_faces():
        if sset.intersection(t):
            continue
        if tuple(sorted(s + t)) in X:
            faces.append(t)
    return SimplicialComplex(X.n, faces)


def induced(X: SimplicialComplex, U: Iterable[int]) -> SimplicialComplex:
    """Subcomplex of all faces contained in U, on the same ambient id range."""
    uset = {int(v) for v in U}
    for v in uset:
        if not 0 <= v < X.n:
            raise InputError(f"vertex {v} outside ambient range 0..{X.n - 1}")
    faces = [t for t in X.all_faces() if uset.issuperset(t)]
    return SimplicialComplex(X.n, faces)


def degree(X: SimplicialComplex, sigma: Sequence[int]) -> int:
    """Number of cofaces of sigma of one dimension higher."""
    s = simplex(sigma)
    if s not in X:
        raise InputError(f"{s} is not a face of the complex")
    sset = set(s)
    count = 0
    for v in X.vertices():
        if v in sset:
            continue
        if tuple(sorted(s + (v,))) in X:
            count += 1
    return count


def min_degree(X: SimplicialComplex, k: int) -> int:
    """Minimum degree over the k-faces; for k = -1 this is the vertex count."""
    faces = X.faces(k)
    if not faces:
        raise DomainError(f"no faces of dimension {k}")
    return min(degree(X, s) for s in faces)


@dataclass(frozen=True)
class MissingFaceReport:
    """Minimal non-faces of a complex and their maximal dimension.

    ``h`` is None exactly when the complex is complete (no missing face).
    """

    missing: tuple[Simplex, ...]
    h: int | None

    @property
    def is_complete(self) -> bool:
        return self.h is None


def missing_faces(X: SimplicialComplex) -> MissingFaceReport:
    """All minimal non-faces among subsets of {0..n-1}, by brute force."""
    if X.n > _MAX_MISSING_SEARCH:
        raise SizeLimitError(
            f"missing-face search enumerates 2^n subsets; n={X.n} exceeds {_MAX_MISSING_SEARCH}"
        )
    out: list[Simplex] = []
    for size in range(1, X.n + 1):
        for c in combinations(range(X.n), size):
            if c in X:
                continue
            if all(c[:i] + c[i + 1 :] in X for i in range(size)):
                out.append(c)
    out.sort(key=lambda f: (len(f), f))
    h = max((len(f) - 1 for f in out), default=None)
    return MissingFaceReport(tuple(out), h)


def from_missing_faces(n: int, missing: Iterable[Sequence[int]]) -> SimplicialComplex:
    """Complex of all subsets of {0..n-1} that contain no given missing face.

    Inverse of :func:`missing_faces` when ``missing`` is an antichain.
    """
    if n > 16:
        raise SizeLimitError(f"reconstruction enumerates 2^n subsets; n={n} too large")
    mins = [simplex(f) for f in missing]
    for f in mins:
        if f and f[-1] >= n:
            raise InputError(f"missing face {f} references vertex >= n={n}")
    msets = [frozenset(f) for f in mins]
    faces = []
    for size in range(n + 1):
        for c in combinations(range(n), size):
            cset = set(c)
            if not any(m <= cset for m in msets):
                faces.append(c)
    return SimplicialComplex(n, faces)


def facets(X: SimplicialComplex) -> tuple[Simplex, ...]:
    """Maximal faces, ordered by (dimension, lexicographic)."""
    out = [f for f in X.all_faces() if f and degree(X, f) == 0]
    if not out:
        return ((),)
    out.sort(key=lambda f: (len(f), f))
    return tuple(out)


def relabel(X: SimplicialComplex, perm: Sequence[int]) -> SimplicialComplex:
    """Apply a permutation of {0..n-1} to all vertex ids."""
    if sorted(perm) != list(range(X.n)):
        raise InputError("relabeling must be a permutation of 0..n-1")
    faces = [tuple(sorted(perm[v] for v in f)) for f in X.all_faces()]
    return SimplicialComplex(X.n, faces)


def compactify(X: SimplicialComplex) -> tuple[SimplicialComplex, dict[int, int]]:
    """Relabel the support vertices onto {0..m-1}, dropping unused ambient ids.

    Returns the compacted complex and the old-id -> new-id mapping.
    """
    support = X.vertices()
    if not support:
        raise DomainError("complex has no vertices")
    mapping = {v: i for i, v in enumerate(support)}
    faces = [tuple(mapping[v] for v in f) for f in X.all_faces()]
    return SimplicialComplex(len(support), faces), mapping


# ---------------------------------------------------------------------------
# facet file format: UTF-8 text, '#' comments, blank lines ignored,
# first data line 'n <count>', each further data line one facet as
# space-separated vertex ids.

def parse_facet_text(text: str) -> tuple[int, list[Simplex]]:
    n = None
    out: list[Simplex] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if parts[0] != "n" or len(parts) != 2:
                raise InputError(f"line {lineno}: expected header 'n <count>', got {raw!r}")
            try:
                n = int(parts[1])
            except ValueError:
                raise InputError(f"line {lineno}: bad vertex count {parts[1]!r}") from None
            if n < 1:
                raise InputError(f"line {lineno}: vertex count must be >= 1")
            continue
        try:
            ids = [int(p) for p in parts]
        except ValueError:
            raise InputError(f"line {lineno}: non-integer vertex id in {raw!r}") from None
        out.append(simplex(ids))
    if n is None:
        raise InputError("missing 'n <count>' header line")
    return n, out


def load_facet_file(path: str) -> SimplicialComplex:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read facet file {path}: {exc}") from exc
    n, fs = parse_facet_text(text)
    return from_facets(n, fs)


def load_edge_file(path: str) -> SimplicialComplex:
    """Clique complex of a graph given in facet-file syntax with 2-id lines."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read edge file {path}: {exc}") from exc
    n, lines = parse_facet_text(text)
    for e in lines:
        if len(e) != 2:
            raise InputError(f"edge file line {e} does not have exactly 2 vertex ids")
    return clique_complex(n, lines)


def format_facets(X: SimplicialComplex) -> str:
    """Facet-file representation of a complex (round-trips through load)."""
    lines = [f"n {X.n}"]
    for f in facets(X):
        if f:
            lines.append(" ".join(str(v) for v in f))
    return "\n".join(lines) + "\n"
