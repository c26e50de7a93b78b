"""The g-vector cone, fibre polytopes, and exact lattice-point counts.

The cone is cut out by the submodule dimension vectors of the boundary
and diagonal modules; its fibres under the weight grading are enumerated
by a depth-first search over an integral parametrization of the fibre
lattice, pruned by exact interval propagation with LP tightening.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .diamonds import build_bar
from .errors import UnboundedFibre
from .lp import INFEASIBLE, OPTIMAL, UNBOUNDED, solve_lp
from .pathmods import boundary_path, diagonal_module, submodule_dims
from .quiver import VertexId, det_vertex, hive_vertex


@dataclass(frozen=True)
class Cone:
    l: int
    m: int
    vertices: tuple                 # canonical vertex order
    facets: tuple                   # tuple of integer normal tuples
    grading: tuple                  # row per vertex, length 2l+m

    @property
    def ambient_dim(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class FibreQuery:
    theta: tuple

    def __post_init__(self):
        object.__setattr__(self, "theta", tuple(int(x) for x in self.theta))


def _normalize_normal(vec):
    g = 0
    for x in vec:
        g = math.gcd(g, abs(x))
    if g > 1:
        return tuple(x // g for x in vec)
    return tuple(vec)


@lru_cache(maxsize=None)
def build_cone(l: int, m: int) -> Cone:
    """Facets from submodule dimension vectors; grading from the twist."""
    Q, sigma = build_bar(l, m)
    vorder = Q.vertices
    vindex = {v: k for k, v in enumerate(vorder)}

    def as_normal(dim_pairs):
        vec = [0] * len(vorder)
        for v, c in dim_pairs:
            vec[vindex[v]] = c
        return _normalize_normal(vec)

    facets = []
    seen = set()
    for n in range(1, m + 1):
        T = diagonal_module(l, m, n, Q)
        for d in submodule_dims(T, strict=False):
            vec = as_normal(d)
            if vec not in seen:
                seen.add(vec)
                facets.append(vec)
    for v in sorted((w for w in Q.frozen if w.kind == "hive"),
                    key=VertexId.sort_key):
        T = boundary_path(l, m, v, Q)
        for d in submodule_dims(T, strict=True):
            vec = as_normal(d)
            if vec not in seen:
                seen.add(vec)
                facets.append(vec)
    grading = tuple(tuple(sigma[v]) for v in vorder)
    return Cone(l, m, vorder, tuple(facets), grading)


# ---------------------------------------------------------------------------
# exact LP over a fibre


@dataclass(frozen=True)
class LpExtent:
    status: str            # "interval", "infeasible", "unbounded"
    lo: Fraction = None
    hi: Fraction = None


def lp_extent(c: Cone, theta: FibreQuery, coord: VertexId,
              fixed: dict = None) -> LpExtent:
    """Exact min/max of one coordinate over the fibre polyhedron."""
    fixed = fixed or {}
    n = c.ambient_dim
    k = c.vertices.index(coord)
    A_ub = [[-x for x in f] for f in c.facets]          # facets: f.g >= 0
    b_ub = [0] * len(c.facets)
    A_eq = [[c.grading[v][t] for v in range(n)] for t in range(len(theta.theta))]
    b_eq = list(theta.theta)
    for v, val in fixed.items():
        row = [0] * n
        row[c.vertices.index(v)] = 1
        A_eq.append(row)
        b_eq.append(int(val))
    obj = [0] * n
    obj[k] = 1
    st_lo, lo, _ = solve_lp(obj, A_ub, b_ub, A_eq, b_eq)
    if st_lo == INFEASIBLE:
        return LpExtent("infeasible")
    obj[k] = -1
    st_hi, hi, _ = solve_lp(obj, A_ub, b_ub, A_eq, b_eq)
    if st_lo == UNBOUNDED or st_hi == UNBOUNDED:
        return LpExtent("unbounded",
                        lo if st_lo == OPTIMAL else None,
                        -hi if st_hi == OPTIMAL else None)
    return LpExtent("interval", lo, -hi)


# ---------------------------------------------------------------------------
# integral parametrization of a fibre: solve grading^T g = theta over Z


def _hnf_solve(rows, target):
    """All integer solutions of rows . g = target.

    rows: list of integer row vectors (the transposed grading), target the
    right-hand side.  Returns (g0, kernel_basis) or None if no integral
    solution exists.  kernel_basis is a list of integer vectors.
    """
    R = len(rows)
    C = len(rows[0]) if rows else 0
    M = [list(r) for r in rows]
    U = [[1 if i == j else 0 for j in range(C)] for i in range(C)]

    def colop_swap(a, b):
        for r in range(R):
            M[r][a], M[r][b] = M[r][b], M[r][a]
        for r in range(C):
            U[r][a], U[r][b] = U[r][b], U[r][a]

    def colop_addmul(dst, src, f):
        for r in range(R):
            M[r][dst] += f * M[r][src]
        for r in range(C):
            U[r][dst] += f * U[r][src]

    def colop_negate(a):
        for r in range(R):
            M[r][a] = -M[r][a]
        for r in range(C):
            U[r][a] = -U[r][a]

    rank = 0
    pivot_of_row = {}
    for row in range(R):
        piv = next((c for c in range(rank, C) if M[row][c] != 0), None)
        if piv is None:
            continue
        colop_swap(rank, piv)
        for c in range(rank + 1, C):
            while M[row][c] != 0:
                q = M[row][rank] // M[row][c]
                colop_addmul(rank, c, -q)
                colop_swap(rank, c)
        if M[row][rank] < 0:
            colop_negate(rank)
        pivot_of_row[row] = rank
        rank += 1
    # sequential solve: pivot columns of earlier rows are the only ones with
    # nonzero entries in the current row besides its own pivot
    w = [0] * C
    for row in range(R):
        acc = sum(M[row][c] * w[c] for c in range(rank))
        if row in pivot_of_row:
            p = pivot_of_row[row]
            num = target[row] - acc
            if num % M[row][p] != 0:
                return None
            w[p] = num // M[row][p]
        elif acc != target[row]:
            return None
    g0 = [sum(U[r][c] * w[c] for c in range(rank)) for r in range(C)]
    kernel = [[U[r][c] for r in range(C)] for c in range(rank, C)]
    return g0, kernel


# ---------------------------------------------------------------------------
# counting


_I64_MIN = -(2 ** 63)
_I64_MAX = 2 ** 63 - 1


def _np_rec(R, Rpos, Rneg, res, lo, hi, free):
    """Exact int64 DFS: propagate boxes, fix singletons, branch narrowest."""
    import numpy as np

    while True:
        if not free:
            return 1 if bool((res >= 0).all()) else 0
        idx = np.array(free, dtype=np.intp)
        sub = R[:, idx]
        maxc = Rpos[:, idx] * hi[idx] + Rneg[:, idx] * lo[idx]
        slack = res + maxc.sum(axis=1)
        pos = sub > 0
        neg = sub < 0
        untouched = ~(pos | neg).any(axis=1)
        if bool((slack[untouched] < 0).any()):
            return 0
        rest = slack[:, None] - maxc
        changed = False
        if bool(pos.any()):
            cand = np.where(pos, -(rest // np.where(pos, sub, 1)), _I64_MIN)
            new_lo = cand.max(axis=0)
            upd = new_lo > lo[idx]
            if bool(upd.any()):
                lo[idx[upd]] = new_lo[upd]
                changed = True
        if bool(neg.any()):
            cand = np.where(neg, (-rest) // np.where(neg, sub, 1), _I64_MAX)
            new_hi = cand.min(axis=0)
            upd = new_hi < hi[idx]
            if bool(upd.any()):
                hi[idx[upd]] = new_hi[upd]
                changed = True
        if bool((lo[idx] > hi[idx]).any()):
            return 0
        if not changed:
            break
    widths = hi[idx] - lo[idx]
    singles = widths == 0
    if bool(singles.any()):
        fixed = idx[singles]
        res = res + R[:, fixed] @ lo[fixed]
        free = [int(i) for i in idx[~singles]]
        if not free:
            return 1 if bool((res >= 0).all()) else 0
        idx = np.array(free, dtype=np.intp)
        widths = hi[idx] - lo[idx]
    j = int(idx[int(np.argmin(widths))])
    rest_free = [i for i in free if i != j]
    col = R[:, j]
    total = 0
    base = res + int(lo[j]) * col
    for _ in range(int(lo[j]), int(hi[j]) + 1):
        total += _np_rec(R, Rpos, Rneg, base.copy(), lo.copy(), hi.copy(),
                         rest_free)
        base = base + col
    return total


def _np_count(Rrows, r0, lo, hi, workers: int = 1):
    """Vectorized exact count; None when int64 magnitude cannot be assured."""
    import numpy as np

    F = len(Rrows)
    d = len(Rrows[0]) if F else 0
    max_r = max((abs(x) for row in Rrows for x in row), default=0)
    max_b = max([abs(x) for x in lo] + [abs(x) for x in hi] + [1])
    max_res = max((abs(x) for x in r0), default=0)
    # boxes only shrink, so every intermediate int64 stays below this bound
    if max_res + (2 * d + 2) * max_r * max_b >= 2 ** 61:
        return None
    R = np.array(Rrows, dtype=np.int64)
    Rpos = np.maximum(R, 0)
    Rneg = np.minimum(R, 0)
    res0 = np.array(r0, dtype=np.int64)
    lo0 = np.array(lo, dtype=np.int64)
    hi0 = np.array(hi, dtype=np.int64)
    free0 = list(range(d))
    if workers <= 1:
        return _np_rec(R, Rpos, Rneg, res0, lo0, hi0, free0)
    widths = hi0 - lo0
    j = int(np.argmax(widths))
    if int(widths[j]) == 0:
        return _np_rec(R, Rpos, Rneg, res0, lo0, hi0, free0)
    col = R[:, j]
    rest_free = [i for i in free0 if i != j]
    branches = [(R, Rpos, Rneg, res0 + v * col, lo0.copy(), hi0.copy(),
                 rest_free) for v in range(int(lo0[j]), int(hi0[j]) + 1)]
    import multiprocessing as mp
    ctx = mp.get_context("fork")
    with ctx.Pool(processes=min(workers, len(branches))) as pool:
        parts = pool.starmap(_np_rec, branches)
    return sum(parts)


def _propagate(res, Rcols, lo, hi, free, rounds=2):
    """Tighten the boxes of the free coordinates; None when infeasible.

    Each facet f gives c_j z_j >= -res_f - (best case of the other free
    coordinates over their boxes); exact integer ceil/floor division.
    Returns updated (lo, hi) copies.
    """
    lo = dict(lo)
    hi = dict(hi)
    F = len(res)
    for _ in range(rounds):
        changed = False
        # optimistic slack per facet under the current boxes
        slack = list(res)
        for i in free:
            ci_col = Rcols[i]
            li, hi_i = lo[i], hi[i]
            for f in range(F):
                ci = ci_col[f]
                if ci > 0:
                    slack[f] += ci * hi_i
                elif ci < 0:
                    slack[f] += ci * li
        for f in range(F):
            if slack[f] >= 0:
                continue
            # some coordinate must move; derive bounds from this facet
            deficit = slack[f]
            fixable = False
            for j in free:
                cj = Rcols[j][f]
                if cj == 0:
                    continue
                # remove j's optimistic contribution, bound c_j z_j
                rest = deficit - (cj * hi[j] if cj > 0 else cj * lo[j])
                if cj > 0:
                    cand = -(rest // cj)          # ceil(-rest / cj)
                    if cand > lo[j]:
                        lo[j] = cand
                        changed = True
                    if lo[j] > hi[j]:
                        return None
                    fixable = True
                else:
                    cand = (-rest) // cj          # floor(-rest / cj)
                    if cand < hi[j]:
                        hi[j] = cand
                        changed = True
                    if lo[j] > hi[j]:
                        return None
                    fixable = True
            if not fixable:
                return None
        if not changed:
            break
    return lo, hi


def _dfs_count(res, Rcols, free, lo, hi):
    """Count integer points; res holds facet residuals for the fixed prefix."""
    if not free:
        return 1 if all(x >= 0 for x in res) else 0
    prop = _propagate(res, Rcols, lo, hi, free)
    if prop is None:
        return 0
    lo, hi = prop
    j = min(free, key=lambda i: (hi[i] - lo[i], i))
    rest = [i for i in free if i != j]
    col = Rcols[j]
    a, b = lo[j], hi[j]
    total = 0
    base = [res[f] + a * col[f] for f in range(len(res))]
    for val in range(a, b + 1):
        total += _dfs_count(base, Rcols, rest, lo, hi)
        if val < b:
            for f in range(len(base)):
                base[f] += col[f]
    return total


def _size_reduce(rows, passes=3):
    """Bounded-pass integer size reduction of a lattice basis.

    Each pass sorts by norm and reduces every row against the
    Gram-Schmidt directions of the shorter ones (nearest-integer
    coefficients).  All row operations are unimodular, so the spanned
    lattice is unchanged.
    """
    n = len(rows)
    b = [list(r) for r in rows]
    if n <= 1:
        return b

    def norm2(v):
        return sum(x * x for x in v)

    for _ in range(passes):
        b.sort(key=norm2)
        star = []
        norms = []
        changed = False
        for i in range(n):
            for j in range(len(star) - 1, -1, -1):
                if norms[j] == 0:
                    continue
                mu = sum(Fraction(x) * y
                         for x, y in zip(b[i], star[j])) / norms[j]
                r = mu.numerator // mu.denominator
                if 2 * (mu - r) > 1:
                    r += 1
                if r:
                    b[i] = [x - r * y for x, y in zip(b[i], b[j])]
                    changed = True
            v = [Fraction(x) for x in b[i]]
            for j in range(len(star)):
                if norms[j]:
                    mu = sum(Fraction(x) * y
                             for x, y in zip(b[i], star[j])) / norms[j]
                    v = [a - mu * c for a, c in zip(v, star[j])]
            star.append(v)
            norms.append(norm2(v))
        if not changed:
            break
    return b


class _FibreGeometry:
    """Per-cone data shared by every fibre query.

    The kernel lattice of the grading and the reduced facet matrix do not
    depend on the target weight; dual certificates turn per-fibre
    coordinate bounds into integer dot products.  The kernel basis is
    LLL-reduced against the facet image to keep coefficients small (a
    unimodular change, so lattice-point counts are unaffected).
    """

    def __init__(self, c: Cone):
        self.cone = c
        rows = [[c.grading[v][t] for v in range(c.ambient_dim)]
                for t in range(len(c.grading[0]))]
        zero = _hnf_solve(rows, [0] * len(rows))
        self.rows = rows
        kernel = zero[1]
        if kernel:
            embedded = [list(kv) + [sum(f[v] * kv[v]
                                        for v in range(c.ambient_dim))
                                    for f in c.facets] for kv in kernel]
            reduced = _size_reduce(embedded)
            kernel = [row[:c.ambient_dim] for row in reduced]
        self.kernel = kernel
        self.d = len(self.kernel)
        self.R = [[sum(f[v] * kv[v] for v in range(c.ambient_dim))
                   for kv in self.kernel] for f in c.facets]
        self.up_cert, self.dn_cert = self._certificates()

    def _combinatorial_certificate(self, j, sign):
        """Search a 1- or 2-row nonneg combination of -R equal to sign*e_j."""
        F, d = len(self.R), self.d
        rows = [[-x for x in self.R[f]] for f in range(F)]
        for f in range(F):
            u = rows[f]
            if sign * u[j] > 0 and all(u[t] == 0 for t in range(d) if t != j):
                y = [Fraction(0)] * F
                y[f] = Fraction(sign, u[j])
                return y
        for f in range(F):
            u = rows[f]
            for g in range(f + 1, F):
                v = rows[g]
                # alpha*u + beta*v = target with alpha, beta > 0
                ratio = None  # beta/alpha
                ok = True
                for t in range(d):
                    if t == j:
                        continue
                    if u[t] == 0 and v[t] == 0:
                        continue
                    if v[t] == 0:
                        ok = False
                        break
                    r = Fraction(-u[t], v[t])
                    if r <= 0 or (ratio is not None and r != ratio):
                        ok = False
                        break
                    ratio = r
                if not ok or ratio is None:
                    continue
                denom = u[j] + ratio * v[j]
                if denom == 0:
                    continue
                alpha = Fraction(sign) / denom
                if alpha <= 0:
                    continue
                y = [Fraction(0)] * F
                y[f] = alpha
                y[g] = alpha * ratio
                return y
        return None

    def _certificates(self):
        """Dual vectors bounding each reduced coordinate on every fibre.

        y >= 0 with (-R)^T y = e_j gives z_j <= y . r0 on {Rz + r0 >= 0};
        the certificate is theta-independent.  Dual infeasibility means
        the coordinate is unbounded over some fibre.  Small-support
        certificates are searched combinatorially before falling back to
        an exact LP.
        """
        F, d = len(self.R), self.d
        A_eq = [[-self.R[f][j] for f in range(F)] for j in range(d)]
        ups, dns = [], []
        cap = 3 * (F + d)
        for j in range(d):
            out = []
            for sign in (1, -1):
                y = self._combinatorial_certificate(j, sign)
                if y is None:
                    b = [sign if k == j else 0 for k in range(d)]
                    st, _, y = solve_lp([1] * F, A_eq=A_eq, b_eq=b,
                                        free=False, phase2_maxit=cap)
                    y = [Fraction(v) for v in y] if st == OPTIMAL else None
                out.append(y)
            ups.append(out[0])
            dns.append(out[1])
        return ups, dns

    def solve_theta(self, theta):
        sol = _hnf_solve(self.rows, list(theta))
        if sol is None:
            return None
        g0, _ = sol
        return [sum(f[v] * g0[v] for v in range(self.cone.ambient_dim))
                for f in self.cone.facets]

    def boxes(self, r0):
        lo, hi = [None] * self.d, [None] * self.d
        for j in range(self.d):
            if self.up_cert[j] is None or self.dn_cert[j] is None:
                raise UnboundedFibre(
                    f"the grading fibres are unbounded in direction {j}")
            hi[j] = math.floor(sum(y * r for y, r in zip(self.up_cert[j], r0)))
            lo[j] = math.ceil(-sum(y * r for y, r in zip(self.dn_cert[j], r0)))
        return lo, hi


def _root_tighten(r0, Rcols, lo, hi, d):
    """Strong fixpoint propagation of the root boxes (all facets)."""
    F = len(r0)
    for _ in range(3 * d):
        changed = False
        for f in range(F):
            slack = r0[f]
            for i in range(d):
                ci = Rcols[i][f]
                if ci > 0:
                    slack += ci * hi[i]
                elif ci < 0:
                    slack += ci * lo[i]
            for j in range(d):
                cj = Rcols[j][f]
                if cj == 0:
                    continue
                rest = slack - (cj * hi[j] if cj > 0 else cj * lo[j])
                if cj > 0:
                    cand = -(rest // cj)
                    if cand > lo[j]:
                        lo[j] = cand
                        changed = True
                else:
                    cand = (-rest) // cj
                    if cand < hi[j]:
                        hi[j] = cand
                        changed = True
                if lo[j] > hi[j]:
                    return None
        if not changed:
            break
    return lo, hi


_GEOMETRY_CACHE: dict = {}


def _geometry(c: Cone) -> "_FibreGeometry":
    geo = _GEOMETRY_CACHE.get(c)
    if geo is None:
        geo = _FibreGeometry(c)
        _GEOMETRY_CACHE[c] = geo
    return geo


def count_lattice_points(c: Cone, theta, workers: int = 1) -> int:
    """Exact number of integer points of the fibre polytope at theta."""
    if not isinstance(theta, FibreQuery):
        theta = FibreQuery(tuple(theta))
    if len(theta.theta) != 2 * c.l + c.m:
        raise ValueError(f"theta must have length {2 * c.l + c.m}")
    geo = _geometry(c)
    r0 = geo.solve_theta(theta.theta)
    if r0 is None:
        return 0
    d = geo.d
    if d == 0:
        return 1 if all(x >= 0 for x in r0) else 0
    lo, hi = geo.boxes(r0)
    if any(a > b for a, b in zip(lo, hi)):
        return 0
    Rcols = [[geo.R[f][j] for f in range(len(geo.R))] for j in range(d)]
    tightened = _root_tighten(r0, Rcols, lo, hi, d)
    if tightened is None:
        return 0
    lo, hi = tightened
    fast = _np_count(geo.R, r0, lo, hi, workers=workers)
    if fast is not None:
        return fast
    free = list(range(d))
    lo = {j: lo[j] for j in free}
    hi = {j: hi[j] for j in free}
    if workers <= 1:
        return _dfs_count(list(r0), Rcols, free, lo, hi)
    return _count_parallel(r0, Rcols, free, lo, hi, workers)


def _branch_args(r0, Rcols, free, lo, hi):
    prop = _propagate(r0, Rcols, lo, hi, free)
    if prop is None:
        return []
    lo, hi = prop
    j = max(free, key=lambda i: (hi[i] - lo[i], i))  # widest: balanced split
    rest = [i for i in free if i != j]
    col = Rcols[j]
    out = []
    for val in range(lo[j], hi[j] + 1):
        res = [r0[f] + val * col[f] for f in range(len(r0))]
        out.append((res, Rcols, rest, lo, hi))
    return out


def _worker(args):
    return _dfs_count(args[0], args[1], args[2], args[3], args[4])


def _count_parallel(r0, Rcols, free, lo, hi, workers: int) -> int:
    import multiprocessing as mp
    branches = _branch_args(list(r0), Rcols, free, lo, hi)
    if not branches:
        return 0
    if len(branches) == 1 or workers <= 1:
        return sum(_worker(b) for b in branches)
    ctx = mp.get_context("fork")
    with ctx.Pool(processes=min(workers, len(branches))) as pool:
        parts = pool.map(_worker, branches)
    return sum(parts)


# ---------------------------------------------------------------------------
# serialization


def cone_to_json(c: Cone) -> str:
    def vkey(v):
        if v.kind == "det":
            return ["det", str(v.n)]
        return ["hive", str(v.n), str(v.i), str(v.j), "1" if v.dual else "0"]
    doc = {
        "l": str(c.l),
        "m": str(c.m),
        "vertices": [vkey(v) for v in c.vertices],
        "facets": [[str(x) for x in f] for f in c.facets],
        "grading": [[str(x) for x in g] for g in c.grading],
    }
    return json.dumps(doc, indent=1, sort_keys=True)


def cone_from_json(text: str) -> Cone:
    doc = json.loads(text)

    def vread(item):
        if item[0] == "det":
            return det_vertex(int(item[1]))
        return hive_vertex(int(item[1]), int(item[2]), int(item[3]),
                           item[4] == "1")
    return Cone(int(doc["l"]), int(doc["m"]),
                tuple(vread(v) for v in doc["vertices"]),
                tuple(tuple(int(x) for x in f) for f in doc["facets"]),
                tuple(tuple(int(x) for x in g) for g in doc["grading"]))
