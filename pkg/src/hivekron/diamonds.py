"""Glued hive quivers: the lifted quiver with its grading and its twist.

The lifted glued quiver is assembled hive by hive.  Within a diamond the
two hives are glued along the j = 0 edge (non-consistently: the two sides
induce the same arrows there, stored once); adjacent diamonds are glued
consistently (their induced arrows along the shared edge cancel).  The
twisted quiver replaces every diamond by the even form; there all shared
edges carry arrows once.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (OutOfRange, SizeTooSmall, UnderdeterminedWeights,
                     UnsupportedDiamond, WeightConfigInconsistent,
                     WeightRoutesDisagree)
from .quiver import (IceQuiver, VertexId, det_vertex, hive_vertex,
                     make_quiver, mutate_weights_seq, weight_defect)
from .semiinv import det_weight, normalize_label, sigma_lambda_weight


# ---------------------------------------------------------------------------
# single hives


@dataclass(frozen=True)
class HiveSpec:
    l: int
    orientation: str = "ccw"   # "ccw" or "cw"
    n: int = 1
    dual: bool = False


@dataclass(frozen=True)
class GluedQuiver:
    """A glued quiver with its grading and the raw-label dictionary."""
    quiver: IceQuiver
    weights: dict
    l: int
    m: int

    def canonical(self, n: int, i: int, j: int, dual: bool) -> VertexId:
        return canonical_vertex(n, i, j, dual, self.l, self.m)

    @classmethod
    def tilde(cls, l: int, m: int) -> "GluedQuiver":
        Q, sigma = build_tilde(l, m)
        return cls(Q, sigma, l, m)

    @classmethod
    def bar(cls, l: int, m: int) -> "GluedQuiver":
        Q, sigma = build_bar(l, m)
        return cls(Q, sigma, l, m)


def hive_grid(l: int):
    """All hive coordinates (i,j) with 1 <= i+j <= l minus the two corners."""
    return [(i, j) for i in range(l + 1) for j in range(l + 1)
            if 1 <= i + j <= l and (i, j) not in ((l, 0), (0, l))]


def hive(spec: HiveSpec) -> IceQuiver:
    """The triangular hive ice quiver of size l."""
    l = spec.l
    if l < 2:
        raise SizeTooSmall(f"hive size must be >= 2, got {l}")
    if spec.orientation not in ("ccw", "cw"):
        raise OutOfRange(f"unknown orientation {spec.orientation!r}")
    grid = set(hive_grid(l))
    steps = ((0, 1), (-1, 0), (1, -1))
    if spec.orientation == "cw":
        steps = tuple((-dx, -dy) for dx, dy in steps)
    verts = {hive_vertex(spec.n, i, j, spec.dual): (i, j) for i, j in grid}
    frozen = {v for v, (i, j) in verts.items()
              if i == 0 or j == 0 or i + j == l}
    arrows = {}
    for v, (i, j) in verts.items():
        for dx, dy in steps:
            tgt = (i + dx, j + dy)
            if tgt in grid:
                w = hive_vertex(spec.n, tgt[0], tgt[1], spec.dual)
                if v in frozen and w in frozen:
                    continue
                arrows[(v, w)] = arrows.get((v, w), 0) + 1
    return make_quiver(verts, frozen, arrows)


def canonical_vertex(n: int, i: int, j: int, dual: bool,
                     l: int, m: int) -> VertexId:
    """Canonical representative of a raw hive label under the gluing rules."""
    i, j, n, dual = normalize_label(i, j, n, dual, l)
    if n > m:
        raise OutOfRange(f"diamond index {n} out of range for m={m}")
    return hive_vertex(n, i, j, dual)


# ---------------------------------------------------------------------------
# shared-edge bookkeeping


def _edge_key(v: VertexId, l: int):
    """Identify the glued edge a vertex lies on, if any."""
    if v.kind != "hive":
        return None
    if v.n == 1:
        return ("edge1",)
    if v.j == 0:
        return ("diag", v.n)
    if v.n % 2 == 1 and v.i == 0:
        return ("right", v.n, v.dual)
    if v.n % 2 == 0 and v.i + v.j == l:
        return ("hyp", v.n, v.dual)
    return None


def _assemble(l, m, label_of, families, frozen, det_arrows):
    """Collect per-hive family arrows, resolving shared-edge contributions."""
    grid = hive_grid(l)
    gridset = set(grid)
    arrows: dict = {}
    edge_bucket: dict = {}
    for n in range(2, m + 1):
        for dual in (False, True):
            steps = families(n, dual)
            for (x, y) in grid:
                src = label_of(n, x, y, dual)
                for dx, dy in steps:
                    t = (x + dx, y + dy)
                    if t not in gridset:
                        continue
                    tgt = label_of(n, t[0], t[1], dual)
                    if src in frozen and tgt in frozen:
                        continue
                    ks, kt = _edge_key(src, l), _edge_key(tgt, l)
                    if ks is not None and ks == kt:
                        edge_bucket[(src, tgt)] = edge_bucket.get((src, tgt), 0) + 1
                    else:
                        arrows[(src, tgt)] = arrows.get((src, tgt), 0) + 1
    seen = set()
    for (s, t), fwd in edge_bucket.items():
        if (t, s) in seen or (s, t) in seen:
            continue
        seen.add((s, t))
        back = edge_bucket.get((t, s), 0)
        net = fwd - back
        if net == 0:
            continue
        if net % 2 != 0:
            raise WeightConfigInconsistent(
                f"unpaired shared-edge arrow {s}->{t} ({fwd} vs {back})")
        if net > 0:
            arrows[(s, t)] = arrows.get((s, t), 0) + net // 2
        else:
            arrows[(t, s)] = arrows.get((t, s), 0) + (-net) // 2
    for (s, t) in det_arrows:
        if s in frozen and t in frozen:
            continue
        arrows[(s, t)] = arrows.get((s, t), 0) + 1
    return arrows


def _boundary_frozen(l: int, m: int) -> set:
    out = {det_vertex(n) for n in range(1, m + 1)}
    if m % 2 == 0:
        out |= {hive_vertex(m, i, l - i, d)
                for i in range(1, l) for d in (False, True)}
    else:
        out |= {hive_vertex(m, 0, j, d)
                for j in range(1, l) for d in (False, True)}
    return out


def _check_sizes(l: int, m: int):
    if l < 2 or m < 2:
        raise SizeTooSmall(f"need l, m >= 2, got l={l}, m={m}")


def expected_vertex_count(l: int, m: int) -> int:
    """Glued-quiver vertex count (l-1)(l+2) + (l^2-1)(m-2), before dets."""
    return (l - 1) * (l + 2) + (l * l - 1) * (m - 2)


# ---------------------------------------------------------------------------
# the lifted glued quiver


def _tilde_families(n: int, dual: bool):
    if n % 2 == 0:
        return ((1, 0), (0, -1), (-1, 1)) if not dual else \
               ((1, 0), (-1, 1), (0, -1))
    return ((-1, 0), (0, 1), (1, -1)) if not dual else \
           ((-1, 0), (1, -1), (0, 1))


def _tilde_label(l: int, m: int):
    def label_of(n, x, y, dual):
        return canonical_vertex(n, x, y, dual, l, m)
    return label_of


def _det_arrows_common(l: int, m: int, diag_end):
    """Determinant-vertex arrows; diag_end(n) names the chain end label."""
    out = []
    out.append((det_vertex(1), hive_vertex(1, 0, l - 1, False)))
    for n in range(2, m + 1):
        out.append((diag_end(n), det_vertex(n)))
        if n % 2 == 0:
            for d in (False, True):
                out.append((det_vertex(n), hive_vertex(n, l - 1, 1, d)))
        elif n >= 3:
            for d in (False, True):
                out.append((det_vertex(n), hive_vertex(n, 0, l - 1, d)))
    return out


@lru_cache(maxsize=None)
def build_tilde(l: int, m: int):
    """The lifted glued ice quiver with its weight configuration."""
    _check_sizes(l, m)
    frozen = _boundary_frozen(l, m)
    det_arrows = _det_arrows_common(l, m, lambda n: hive_vertex(n, l - 1, 0, False))
    arrows = _assemble(l, m, _tilde_label(l, m), _tilde_families, frozen,
                       det_arrows)
    verts = set()
    for n in range(2, m + 1):
        for dual in (False, True):
            for (x, y) in hive_grid(l):
                verts.add(canonical_vertex(n, x, y, dual, l, m))
    verts |= {det_vertex(n) for n in range(1, m + 1)}
    Q = make_quiver(verts, frozen, arrows)
    sigma = {v: (sigma_lambda_weight(v.i, v.j, v.n, v.dual, l, m)
                 if v.kind == "hive" else det_weight(v.n, l, m))
             for v in Q.vertices}
    bad = weight_defect(Q, sigma)
    if bad:
        raise WeightConfigInconsistent(
            f"lifted quiver weights unbalanced at {bad[:4]}")
    return Q, sigma


# ---------------------------------------------------------------------------
# the twisted quiver, built directly in even form


def _bar_families(n: int, dual: bool):
    return ((1, 0), (0, -1), (-1, 1)) if not dual else \
           ((1, 0), (-1, 1), (0, -1))


def _bar_label(l: int, m: int):
    def label_of(n, x, y, dual):
        if n % 2 == 0:
            return canonical_vertex(n, x, y, dual, l, m)
        if y == 0:
            return hive_vertex(n, l - x, 0, False)
        if x == 0:
            return hive_vertex(n - 1, y, l - y, dual)
        if x + y == l:
            return hive_vertex(n, 0, x, dual)
        return hive_vertex(n, x, y, dual)
    return label_of


def bar_known_weight(v: VertexId, l: int, m: int):
    """Formula weight of a twisted-quiver vertex, None on odd interiors."""
    if v.kind == "det":
        return det_weight(v.n, l, m)
    if v.n % 2 == 1 and v.n >= 3:
        if v.j == 0:
            return sigma_lambda_weight(l - v.i, 0, v.n, False, l, m)
        if v.i >= 1 and v.i + v.j < l:
            return None
    return sigma_lambda_weight(v.i, v.j, v.n, v.dual, l, m)


def _solve_interior_weights(Q: IceQuiver, known: dict, dim: int) -> dict:
    """Solve B*sigma = 0 for the unknown rows, exactly and per coordinate."""
    unknown = [v for v in Q.vertices if v not in known]
    if not unknown:
        return {}
    idx = {v: k for k, v in enumerate(unknown)}
    rows = []
    rhs = []
    for u in Q.mutable:
        coef = [0] * len(unknown)
        acc = [0] * dim
        touched = False
        for v, mult in Q.arrows_in(u):
            if v in idx:
                coef[idx[v]] += mult
                touched = True
            else:
                w = known[v]
                for k in range(dim):
                    acc[k] += mult * w[k]
        for v, mult in Q.arrows_out(u):
            if v in idx:
                coef[idx[v]] -= mult
                touched = True
            else:
                w = known[v]
                for k in range(dim):
                    acc[k] -= mult * w[k]
        if touched or any(acc):
            rows.append(coef)
            rhs.append([-a for a in acc])
    # Gaussian elimination over the rationals, all coordinates at once
    nr, nu = len(rows), len(unknown)
    A = [[Fraction(x) for x in row] + [Fraction(x) for x in rhs[r]]
         for r, row in enumerate(rows)]
    pivots = []
    r = 0
    for c in range(nu):
        piv = next((k for k in range(r, nr) if A[k][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        pv = A[r][c]
        A[r] = [x / pv for x in A[r]]
        for k in range(nr):
            if k != r and A[k][c] != 0:
                f = A[k][c]
                A[k] = [x - f * y for x, y in zip(A[k], A[r])]
        pivots.append(c)
        r += 1
    if len(pivots) < nu:
        raise UnderdeterminedWeights(
            f"{nu - len(pivots)} interior weight rows undetermined")
    for k in range(r, nr):
        if any(A[k][nu:]):
            raise WeightRoutesDisagree("interior weight system inconsistent")
    out = {}
    for rr, c in enumerate(pivots):
        vals = A[rr][nu:]
        if any(x.denominator != 1 for x in vals):
            raise WeightRoutesDisagree("non-integral interior weight")
        out[unknown[c]] = tuple(int(x) for x in vals)
    return out


@lru_cache(maxsize=None)
def build_bar(l: int, m: int):
    """The twisted glued ice quiver (all diamonds in even form) + grading."""
    _check_sizes(l, m)
    frozen = _boundary_frozen(l, m)

    def diag_end(n):
        return hive_vertex(n, l - 1, 0, False) if n % 2 == 0 else \
            hive_vertex(n, 1, 0, False)

    label_of = _bar_label(l, m)
    det_arrows = _det_arrows_common(l, m, diag_end)
    arrows = _assemble(l, m, label_of, _bar_families, frozen, det_arrows)
    verts = set()
    for n in range(2, m + 1):
        for dual in (False, True):
            for (x, y) in hive_grid(l):
                verts.add(label_of(n, x, y, dual))
    verts |= {det_vertex(n) for n in range(1, m + 1)}
    Q = make_quiver(verts, frozen, arrows)
    known = {}
    for v in Q.vertices:
        w = bar_known_weight(v, l, m)
        if w is not None:
            known[v] = w
    sigma = dict(known)
    sigma.update(_solve_interior_weights(Q, known, 2 * l + m))
    bad = weight_defect(Q, sigma)
    if bad:
        raise WeightConfigInconsistent(
            f"twisted quiver weights unbalanced at {bad[:4]}")
    return Q, sigma


def bar_arrow_types(l: int, m: int) -> dict:
    """Type map of the twisted quiver's arrows: 'a', 'b', 'c', or 'bc'.

    East arrows are 'a'; in even diamonds the template's southwest family
    is 'b', in odd diamonds the roles of 'b' and 'c' swap.  Arrows along
    the self-glued edge serve as both 'b' and 'c'.
    """
    _check_sizes(l, m)
    Q, _ = build_bar(l, m)
    frozen = Q.frozen
    label_of = _bar_label(l, m)
    grid = hive_grid(l)
    gridset = set(grid)
    types: dict = {}

    def put(src, tgt, ty):
        if src in frozen and tgt in frozen:
            return
        old = types.get((src, tgt))
        if old is None or old == ty:
            types[(src, tgt)] = ty
        else:
            types[(src, tgt)] = "bc"

    for n in range(2, m + 1):
        for dual in (False, True):
            fams = _bar_families(n, dual)
            odd = n % 2 == 1
            fam_types = ("a", "c" if odd else "b", "b" if odd else "c")
            for (x, y) in grid:
                src = label_of(n, x, y, dual)
                for (dx, dy), ty in zip(fams, fam_types):
                    t = (x + dx, y + dy)
                    if t in gridset:
                        put(src, label_of(n, t[0], t[1], dual), ty)
    for n in range(2, m + 1):
        odd = n % 2 == 1
        end = hive_vertex(n, 1 if odd else l - 1, 0, False)
        put(end, det_vertex(n), "a")
        targets = [(hive_vertex(n, 0, l - 1, d) if odd else
                    hive_vertex(n, l - 1, 1, d), d) for d in (False, True)]
        for tgt, d in targets:
            put(det_vertex(n), tgt, "b" if d != odd else "c")
    put(det_vertex(1), hive_vertex(1, 0, l - 1, False), "bc")
    missing = set(Q.arrows) - set(types)
    if missing:
        raise WeightConfigInconsistent(f"untyped arrows: {sorted(missing)[:4]}")
    return {a: t for a, t in types.items() if a in Q.arrows}


# ---------------------------------------------------------------------------
# the twist as a mutation sequence


def _twist_word(l: int):
    """Interior mutation word of one hive realizing the twist.

    Nested row sweeps: for t = 1..l-2 mutate the interior rows y >= t,
    far row first, left to right within a row.  Total length C(l,3).
    """
    word = []
    for t in range(1, l - 1):
        for y in range(l - 2, t - 1, -1):
            for x in range(1, l - y):
                word.append((x, y))
    return word


def twist_sequence(l: int, m: int, n_odd: int):
    """Mutation sequence turning diamond ``n_odd`` into its even form.

    The dual hive runs the mirror word (x,y) -> (l-x-y, y); the two hives
    commute, so plain and dual mutations are emitted in alternation.
    """
    _check_sizes(l, m)
    if not (3 <= n_odd <= m and n_odd % 2 == 1):
        raise UnsupportedDiamond(
            f"twist applies to odd diamonds 3..m, got {n_odd}")
    seq = []
    for (x, y) in _twist_word(l):
        seq.append(hive_vertex(n_odd, x, y, False))
        seq.append(hive_vertex(n_odd, l - x - y, y, True))
    return seq


def twist_relabel(v: VertexId, l: int) -> VertexId:
    """Label map aligning the mutated quiver with the direct even form."""
    if v.kind == "hive" and v.n % 2 == 1 and v.n >= 3 and v.j == 0:
        return hive_vertex(v.n, l - v.i, 0, False)
    return v


def all_twists(l: int, m: int):
    seq = []
    for n in range(3, m + 1, 2):
        seq.extend(twist_sequence(l, m, n))
    return seq


def bar_via_mutation(l: int, m: int):
    """Route R1: mutate the lifted quiver along all twists, then relabel."""
    Q, sigma = build_tilde(l, m)
    Q2, sig2 = mutate_weights_seq(Q, sigma, all_twists(l, m))
    relabel = {v: twist_relabel(v, l) for v in Q2.vertices}
    arrows = {(relabel[s], relabel[t]): mult
              for (s, t), mult in Q2.arrows.items()}
    verts = [relabel[v] for v in Q2.vertices]
    frozen = {relabel[v] for v in Q2.frozen}
    return make_quiver(verts, frozen, arrows), \
        {relabel[v]: w for v, w in sig2.items()}


def verify_bar_routes(l: int, m: int):
    """Check that mutation transport and the direct build agree exactly."""
    direct_q, direct_s = build_bar(l, m)
    mut_q, mut_s = bar_via_mutation(l, m)
    if mut_q != direct_q:
        raise WeightRoutesDisagree(
            f"twist-mutated quiver differs from direct build at l={l}, m={m}")
    if mut_s != direct_s:
        diffs = [v for v in direct_s if direct_s[v] != mut_s.get(v)]
        raise WeightRoutesDisagree(
            f"transported weights differ from solved weights at {diffs[:4]}")
    return True
