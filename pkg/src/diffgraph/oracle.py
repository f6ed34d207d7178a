"""Brute-force ground truth for the closed-form identifiability conditions.

A difference graph D constrains, but does not determine, the two causal DAGs
behind it: any pair (G1, G2) of DAGs over D's vertices is compatible with D
when every D-edge appears in G1 or G2 (or in both, with different
coefficients) and every non-D-edge appears in G1 exactly when it appears in
G2.  Under the shared-order assumption the pair must additionally admit one
common topological order.

This module enumerates every DAG that participates in some compatible pair
and decides identifiability the slow, assumption-free way: the total effect
is identifiable by adjustment exactly when one set W satisfies the back-door
criterion relative to (X, Y) in every such DAG, and the direct effect when
one W satisfies the single-door criterion everywhere.  Verdicts therefore
serve as an independent oracle for the closed-form conditions, which is the
whole point: the two must agree wherever the conditions are correct.

Enumeration is exponential and capped at 5 vertices.  Internally DAGs are
integer bitmasks over the ordered vertex pairs, and per-DAG admissible-set
families are memoized, so sweeping thousands of small difference graphs
stays cheap.
"""

import itertools
from functools import lru_cache

from .graphs import CausalDag, DifferenceGraph
from .identify import (
    ADJUSTMENT_IDENTIFIABLE,
    NOT_IDENTIFIABLE,
    NULL_EFFECT,
    IdentificationVerdict,
    direct_adjustment_formula,
    direct_null_formula,
    total_adjustment_formula,
    total_null_formula,
)

VERTEX_CAP = 5


# ---------------------------------------------------------------------------
# bitmask internals: vertices are 0..n-1, an edge set is an int over _pairs(n)


@lru_cache(maxsize=None)
def _pairs(n):
    return tuple((i, j) for i in range(n) for j in range(n) if i != j)


@lru_cache(maxsize=None)
def _pair_bit(n):
    return {pair: 1 << k for k, pair in enumerate(_pairs(n))}


def _mask_of(n, index_edges):
    bit = _pair_bit(n)
    mask = 0
    for e in index_edges:
        mask |= bit[e]
    return mask


def _edges_of(n, mask):
    return [pair for k, pair in enumerate(_pairs(n)) if mask >> k & 1]


@lru_cache(maxsize=None)
def _acyclic(n, mask):
    children = [[] for _ in range(n)]
    indegree = [0] * n
    for i, j in _edges_of(n, mask):
        children[i].append(j)
        indegree[j] += 1
    stack = [v for v in range(n) if indegree[v] == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for c in children[v]:
            indegree[c] -= 1
            if indegree[c] == 0:
                stack.append(c)
    return seen == n


@lru_cache(maxsize=None)
def _all_dag_masks(n):
    """Every DAG on n labeled vertices, as a sorted tuple of edge masks.

    Enumerates (permutation, forward-edge subset) pairs, which hits each DAG
    once per linear extension, and dedupes; far fewer candidates than all
    2^(n(n-1)) edge sets.
    """
    bit = _pair_bit(n)
    masks = set()
    forward_pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for perm in itertools.permutations(range(n)):
        bits = [bit[(perm[i], perm[j])] for i, j in forward_pairs]
        for picks in itertools.product((0, 1), repeat=len(bits)):
            mask = 0
            for b, take in zip(bits, picks):
                if take:
                    mask |= b
            masks.add(mask)
    return tuple(sorted(masks))


@lru_cache(maxsize=None)
def _canonical_dag(n, mask):
    names = tuple(f"V{i}" for i in range(n))
    edges = [(names[i], names[j]) for i, j in _edges_of(n, mask)]
    return CausalDag(vertices=names, edges=edges)


@lru_cache(maxsize=None)
def _descendant_bits(n, mask, v):
    children = [[] for _ in range(n)]
    for i, j in _edges_of(n, mask):
        children[i].append(j)
    seen = 1 << v
    stack = [v]
    while stack:
        u = stack.pop()
        for c in children[u]:
            if not seen >> c & 1:
                seen |= 1 << c
                stack.append(c)
    return seen


def _subset_order_key(n):
    """Sort key over vertex bitmasks: size first, then lexicographic."""
    def key(wbits):
        members = tuple(v for v in range(n) if wbits >> v & 1)
        return (len(members), members)
    return key


@lru_cache(maxsize=None)
def _admissible_w_bits(n, mask, x, y, criterion):
    """All W passing the criterion in this DAG, as a frozenset of vertex
    bitmasks over the candidate pool V minus {x, y}."""
    dag = _canonical_dag(n, mask)
    names = dag.vertices
    pool = [v for v in range(n) if v not in (x, y)]
    good = []
    for r in range(len(pool) + 1):
        for combo in itertools.combinations(pool, r):
            w = frozenset(names[v] for v in combo)
            if criterion == "back-door":
                ok = back_door_admissible(dag, names[x], names[y], w)
            else:
                ok = single_door_admissible(dag, names[x], names[y], w)
            if ok:
                wbits = 0
                for v in combo:
                    wbits |= 1 << v
                good.append(wbits)
    return frozenset(good)


# ---------------------------------------------------------------------------
# public criteria on real CausalDag objects


def back_door_admissible(g, x, y, w):
    """Does ``w`` satisfy the back-door criterion relative to (x, y) in g?

    Requires that no member of ``w`` is a strict descendant of ``x`` and that
    ``w`` blocks every x-y path with an arrow into ``x``; the blocking test
    is d-separation in the graph with all edges out of ``x`` removed.
    """
    w = frozenset(w)
    if w & (g.descendants(x) - {x}):
        return False
    pruned = CausalDag(vertices=g.vertices,
                       edges=[e for e in g.edges if e[0] != x])
    return pruned.d_separated(x, y, w)


def single_door_admissible(g, x, y, w):
    """Does ``w`` satisfy the single-door criterion relative to (x, y) in g?

    Requires that no member of ``w`` is a strict descendant of ``y`` and that
    ``w`` d-separates ``x`` from ``y`` in the graph with the edge x -> y
    (when present) removed.
    """
    w = frozenset(w)
    if w & (g.descendants(y) - {y}):
        return False
    pruned = CausalDag(vertices=g.vertices,
                       edges=g.edges - {(x, y)})
    return pruned.d_separated(x, y, w)


# ---------------------------------------------------------------------------
# compatible-DAG enumeration and the oracle verdicts


def _checked_setup(d, shared_order):
    n = len(d.vertices)
    if n > VERTEX_CAP:
        raise ValueError(
            f"brute-force enumeration is capped at {VERTEX_CAP} vertices, "
            f"got {n}")
    if shared_order and not d.is_acyclic():
        raise ValueError(
            "difference graph is cyclic, so no pair of causal models can "
            "share a topological order")
    index = {v: i for i, v in enumerate(d.vertices)}
    d_mask = _mask_of(n, [(index[t], index[h]) for t, h in d.edges])
    return n, index, d_mask


def _compatible_masks(n, d_mask, shared_order):
    """Masks of every DAG appearing in some compatible pair.

    A DAG G has a compatible partner exactly when its minimal partner, the
    symmetric difference G xor D, is itself a DAG (adding optional shared
    D-edges only ever adds cycles).  Under the shared-order assumption the
    union G with D must be acyclic instead, since the union equals the edge
    union of any pair containing G.
    """
    if shared_order:
        return [m for m in _all_dag_masks(n) if _acyclic(n, m | d_mask)]
    return [m for m in _all_dag_masks(n) if _acyclic(n, m ^ d_mask)]


def enumerate_compatible_dags(d, shared_order=False):
    """All DAGs participating in some pair compatible with ``d``.

    Returns CausalDag objects over ``d``'s vertex names in a deterministic
    order.  Raises ValueError beyond the 5-vertex cap, and in shared-order
    mode when ``d`` is cyclic (no compatible pair exists at all).
    """
    n, _, d_mask = _checked_setup(d, shared_order)
    names = d.vertices
    out = []
    for mask in _compatible_masks(n, d_mask, shared_order):
        edges = [(names[i], names[j]) for i, j in _edges_of(n, mask)]
        out.append(CausalDag(vertices=names, edges=edges))
    return tuple(out)


def _oracle(d, x, y, shared_order, criterion):
    n, index, d_mask = _checked_setup(d, shared_order)
    if x not in d:
        raise KeyError(f"unknown vertex {x!r}")
    if y not in d:
        raise KeyError(f"unknown vertex {y!r}")
    if x == y:
        raise ValueError("exposure and outcome must be distinct")
    xi, yi = index[x], index[y]
    masks = _compatible_masks(n, d_mask, shared_order)

    if criterion == "back-door":
        never_effect = all(
            not _descendant_bits(n, m, xi) >> yi & 1 for m in masks)
    else:
        edge_bit = _pair_bit(n)[(xi, yi)]
        never_effect = all(not m & edge_bit for m in masks)
    if never_effect:
        if criterion == "back-door":
            return IdentificationVerdict(
                kind=NULL_EFFECT, formula=total_null_formula(x, y))
        return IdentificationVerdict(
            kind=NULL_EFFECT, formula=direct_null_formula(x, y))

    families = [_admissible_w_bits(n, m, xi, yi, criterion) for m in masks]
    common = None
    for fam in families:
        common = fam if common is None else common & fam
        if not common:
            break
    if common:
        wbits = min(common, key=_subset_order_key(n))
        w = tuple(d.vertices[v] for v in range(n) if wbits >> v & 1)
        if criterion == "back-door":
            formula = total_adjustment_formula(x, y, w)
        else:
            formula = direct_adjustment_formula(x, y, w)
        return IdentificationVerdict(
            kind=ADJUSTMENT_IDENTIFIABLE, adjustment_set=w, formula=formula)

    witness = None
    names = d.vertices
    for (i, fam_i), (j, fam_j) in itertools.combinations(
            enumerate(families), 2):
        if not fam_i & fam_j:
            pair = []
            for m in (masks[i], masks[j]):
                edges = [(names[a], names[b]) for a, b in _edges_of(n, m)]
                pair.append(CausalDag(vertices=names, edges=edges))
            witness = tuple(pair)
            break
    return IdentificationVerdict(kind=NOT_IDENTIFIABLE, witness=witness)


def oracle_total(d, x, y, shared_order=False):
    """Brute-force total-effect verdict for exposure ``x`` and outcome ``y``.

    NullEffect when no compatible DAG has a directed path from x to y;
    AdjustmentIdentifiable with the smallest (then lexicographically first)
    set satisfying the back-door criterion in every compatible DAG;
    otherwise NotIdentifiable, with a witness pair of compatible DAGs whose
    admissible-set families are disjoint.
    """
    return _oracle(d, x, y, shared_order, "back-door")


def oracle_direct(d, x, y, shared_order=False):
    """Brute-force direct-effect verdict, single-door version of
    :func:`oracle_total`.  NullEffect when x is a parent of y in no
    compatible DAG."""
    return _oracle(d, x, y, shared_order, "single-door")
