"""Ice quivers, B-matrices, quiver mutation, and weight transport.

Vertices carry structured labels.  Arrows are stored as a multiset of
ordered pairs; arrows between two frozen vertices are never stored, so
every operation is automatically "up to arrows between frozen vertices".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import MutationAtFrozen, NotAWeightConfig, UnknownVertex


class VertexId(NamedTuple):
    kind: str   # "hive" or "det"
    n: int      # diamond index; for "det" the determinant index
    i: int      # hive coordinates (0 for det vertices)
    j: int
    dual: bool

    def sort_key(self):
        return (self.kind, self.n, self.dual, self.i, self.j)

    def __repr__(self):
        if self.kind == "det":
            return f"det{self.n}"
        tag = "v" if self.dual else ""
        return f"({self.i},{self.j})^{self.n}{tag}"


def hive_vertex(n: int, i: int, j: int, dual: bool = False) -> VertexId:
    return VertexId("hive", n, i, j, bool(dual))


def det_vertex(n: int) -> VertexId:
    return VertexId("det", n, 0, 0, False)


Arrow = tuple[VertexId, VertexId]
Weight = tuple[int, ...]


@dataclass(frozen=True)
class IceQuiver:
    vertices: tuple[VertexId, ...]
    frozen: frozenset[VertexId]
    arrows: dict[Arrow, int] = field(compare=False)

    def __post_init__(self):
        vs = set(self.vertices)
        for (s, t), m in self.arrows.items():
            if m <= 0:
                raise ValueError(f"nonpositive multiplicity on {s}->{t}")
            if s == t:
                raise ValueError(f"loop at {s}")
            if s not in vs or t not in vs:
                raise UnknownVertex(f"arrow endpoint not a vertex: {s}->{t}")

    def __eq__(self, other):
        if not isinstance(other, IceQuiver):
            return NotImplemented
        return (set(self.vertices) == set(other.vertices)
                and self.frozen == other.frozen
                and self.arrows == other.arrows)

    def __hash__(self):
        return hash((frozenset(self.vertices), self.frozen,
                     frozenset(self.arrows.items())))

    @property
    def mutable(self) -> tuple[VertexId, ...]:
        return tuple(v for v in self.vertices if v not in self.frozen)

    def arrows_in(self, v: VertexId) -> list[tuple[VertexId, int]]:
        return [(s, m) for (s, t), m in self.arrows.items() if t == v]

    def arrows_out(self, v: VertexId) -> list[tuple[VertexId, int]]:
        return [(t, m) for (s, t), m in self.arrows.items() if s == v]

    def has_arrow(self, s: VertexId, t: VertexId) -> bool:
        return (s, t) in self.arrows

    def two_cycle_free(self) -> bool:
        return all((t, s) not in self.arrows for (s, t) in self.arrows)


def make_quiver(vertices: Iterable[VertexId], frozen: Iterable[VertexId],
                arrows: Mapping[Arrow, int]) -> IceQuiver:
    """Normalize and build an ice quiver (drops frozen-frozen arrows)."""
    verts = tuple(sorted(set(vertices), key=VertexId.sort_key))
    fr = frozenset(frozen)
    cleaned: dict[Arrow, int] = {}
    for (s, t), m in arrows.items():
        if m == 0:
            continue
        if s in fr and t in fr:
            continue
        cleaned[(s, t)] = cleaned.get((s, t), 0) + m
    # cancel oriented 2-cycles left over from raw input
    for (s, t) in list(cleaned):
        if (t, s) in cleaned and (s, t) in cleaned and s.sort_key() < t.sort_key():
            a, b = cleaned[(s, t)], cleaned[(t, s)]
            k = min(a, b)
            if a - k:
                cleaned[(s, t)] = a - k
            else:
                del cleaned[(s, t)]
            if b - k:
                cleaned[(t, s)] = b - k
            else:
                del cleaned[(t, s)]
    return IceQuiver(verts, fr, cleaned)


def mutate_quiver(Q: IceQuiver, u: VertexId) -> IceQuiver:
    """Fomin-Zelevinsky mutation at a mutable vertex u."""
    if u not in set(Q.vertices):
        raise UnknownVertex(f"{u} is not a vertex")
    if u in Q.frozen:
        raise MutationAtFrozen(f"cannot mutate at frozen vertex {u}")
    ins = Q.arrows_in(u)
    outs = Q.arrows_out(u)
    new: dict[Arrow, int] = dict(Q.arrows)
    for v, m in ins:
        del new[(v, u)]
    for w, m in outs:
        del new[(u, w)]
    # step 1: compose v -> u -> w
    for v, mv in ins:
        for w, mw in outs:
            if v in Q.frozen and w in Q.frozen:
                continue
            new[(v, w)] = new.get((v, w), 0) + mv * mw
    # step 2: reverse arrows at u
    for v, m in ins:
        new[(u, v)] = new.get((u, v), 0) + m
    for w, m in outs:
        new[(w, u)] = new.get((w, u), 0) + m
    # step 3: cancel oriented 2-cycles
    out: dict[Arrow, int] = {}
    for (s, t), m in new.items():
        if (t, s) in new and t.sort_key() < s.sort_key():
            continue  # handled from the other side
        back = new.get((t, s), 0)
        if m > back:
            out[(s, t)] = m - back
        elif back > m:
            out[(t, s)] = back - m
    return IceQuiver(Q.vertices, Q.frozen, out)


def mutate_quiver_seq(Q: IceQuiver, seq: Sequence[VertexId]) -> IceQuiver:
    for u in seq:
        Q = mutate_quiver(Q, u)
    return Q


@dataclass(frozen=True)
class BMatrix:
    rows: tuple[VertexId, ...]      # mutable vertices
    cols: tuple[VertexId, ...]      # all vertices
    entries: tuple[tuple[int, ...], ...]

    def entry(self, u: VertexId, v: VertexId) -> int:
        return self.entries[self.rows.index(u)][self.cols.index(v)]

    def mutable_block(self) -> tuple[tuple[int, ...], ...]:
        idx = [self.cols.index(u) for u in self.rows]
        return tuple(tuple(row[k] for k in idx) for row in self.entries)


def b_matrix(Q: IceQuiver) -> BMatrix:
    """Signed arrow-count matrix, rows indexed by mutable vertices."""
    cols = Q.vertices
    rows = Q.mutable
    col_index = {v: k for k, v in enumerate(cols)}
    mat = [[0] * len(cols) for _ in rows]
    row_index = {u: k for k, u in enumerate(rows)}
    for (s, t), m in Q.arrows.items():
        if s in row_index:
            mat[row_index[s]][col_index[t]] += m
        if t in row_index:
            mat[row_index[t]][col_index[s]] -= m
    return BMatrix(rows, cols, tuple(tuple(r) for r in mat))


def b_matrix_rank(Q: IceQuiver) -> int:
    """Rank of B(Q) over the rationals (fraction-free elimination)."""
    B = b_matrix(Q)
    mat = [list(row) for row in B.entries]
    rank = 0
    ncols = len(B.cols)
    col = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pr = mat[rank]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f, g = mat[r][col], pr[col]
                mat[r] = [a * g - b * f for a, b in zip(mat[r], pr)]
        rank += 1
        if rank == len(mat):
            break
    return rank


WeightConfig = dict  # VertexId -> Weight


def weight_defect(Q: IceQuiver, sigma: Mapping[VertexId, Weight]) -> list[VertexId]:
    """Mutable vertices where the in-sum differs from the out-sum."""
    bad = []
    dim = len(next(iter(sigma.values())))
    for u in Q.mutable:
        acc = [0] * dim
        for v, m in Q.arrows_in(u):
            w = sigma[v]
            for k in range(dim):
                acc[k] += m * w[k]
        for v, m in Q.arrows_out(u):
            w = sigma[v]
            for k in range(dim):
                acc[k] -= m * w[k]
        if any(acc):
            bad.append(u)
    return bad


def is_weight_config(Q: IceQuiver, sigma: Mapping[VertexId, Weight]) -> bool:
    return not weight_defect(Q, sigma)


def mutate_weights(Q: IceQuiver, sigma: Mapping[VertexId, Weight],
                   u: VertexId, check: bool = True) -> WeightConfig:
    """Transport a weight configuration through the mutation at u.

    The new weight at u is the in-sum minus the old weight; all other
    weights are unchanged.  With ``check`` the configuration identity
    B*sigma = 0 is verified on Q before transporting.
    """
    if u in Q.frozen:
        raise MutationAtFrozen(f"cannot mutate weights at frozen vertex {u}")
    if check:
        bad = weight_defect(Q, sigma)
        if bad:
            raise NotAWeightConfig(f"in/out weight sums differ at {bad[:3]}")
    dim = len(sigma[u])
    acc = [0] * dim
    for v, m in Q.arrows_in(u):
        w = sigma[v]
        for k in range(dim):
            acc[k] += m * w[k]
    new = dict(sigma)
    new[u] = tuple(a - b for a, b in zip(acc, sigma[u]))
    return new


def mutate_weights_seq(Q: IceQuiver, sigma: Mapping[VertexId, Weight],
                       seq: Sequence[VertexId],
                       check_every: bool = False) -> tuple[IceQuiver, WeightConfig]:
    """Transport weights along a mutation sequence; final check mandatory."""
    sig = dict(sigma)
    for u in seq:
        sig = mutate_weights(Q, sig, u, check=check_every)
        Q = mutate_quiver(Q, u)
    bad = weight_defect(Q, sig)
    if bad:
        raise NotAWeightConfig(f"transport broke the configuration at {bad[:3]}")
    return Q, sig
