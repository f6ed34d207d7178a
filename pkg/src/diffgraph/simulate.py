"""Seeded generation of linear-SCM pairs behind a difference graph.

Given a difference graph, `sample_compatible_pair` draws two linear
structural causal models whose disagreements reproduce the graph exactly:
changed mechanisms get coefficients at least 0.2 apart (absent edges count
as coefficient zero), unchanged mechanisms share one coefficient to the
bit.  `sample_dataset` then draws observational data from either model by
ancestral sampling.  Both are deterministic functions of their seed, so
every simulated experiment in the test suite is replayable.

The closed-form total effect of a linear model (sum over directed paths of
coefficient products) and the direct effect (the path coefficient itself)
are exposed as ground truths for end-to-end validation.
"""

import itertools
from dataclasses import dataclass, field

import numpy as np

from .estimate import CONTINUOUS, Dataset
from .graphs import CausalDag, DifferenceGraph, shares_topological_order
from .oracle import VERTEX_CAP, enumerate_compatible_dags

GAUSSIAN = "gaussian"
UNIFORM = "uniform"

SEPARATION_MARGIN = 0.2
COEFFICIENT_RANGE = (0.2, 1.0)


@dataclass
class LinearScm:
    """A causal DAG with path coefficients and independent noise.

    Each variable equals the coefficient-weighted sum of its parents plus
    ``noise_scale * draw(noise_family)``.  Uniform noise is scaled to unit
    variance before multiplying by the scale, so both families give each
    variable the same noise variance for the same scale.
    """

    dag: CausalDag
    coefficients: dict
    noise_scales: dict = None
    noise_family: str = GAUSSIAN

    def __post_init__(self):
        if self.noise_scales is None:
            self.noise_scales = {v: 1.0 for v in self.dag.vertices}
        if set(self.coefficients) != self.dag.edges:
            raise ValueError("coefficient keys must equal the DAG edge set")
        if any(c == 0 for c in self.coefficients.values()):
            raise ValueError("path coefficients must be nonzero")
        if set(self.noise_scales) != set(self.dag.vertices):
            raise ValueError("noise scales must cover every vertex")
        if any(s <= 0 for s in self.noise_scales.values()):
            raise ValueError("noise scales must be positive")
        if self.noise_family not in (GAUSSIAN, UNIFORM):
            raise ValueError(f"unknown noise family {self.noise_family!r}")

    def as_dict(self):
        return {
            "vertices": list(self.dag.vertices),
            "edges": [list(e) for e in self.dag.sorted_edges()],
            "coefficients": {f"{t}->{h}": self.coefficients[(t, h)]
                             for t, h in self.dag.sorted_edges()},
            "noise_scales": {v: self.noise_scales[v]
                             for v in self.dag.vertices},
            "noise_family": self.noise_family,
        }


@dataclass
class ScmPair:
    """Two linear SCMs together with the difference graph they induce."""

    scm1: LinearScm
    scm2: LinearScm
    difference_graph: DifferenceGraph

    def __post_init__(self):
        recomputed = recompute_difference_graph(self.scm1, self.scm2)
        if recomputed.edges != self.difference_graph.edges:
            raise ValueError(
                "the SCM pair does not induce the stated difference graph")
        c1, c2 = self.scm1.coefficients, self.scm2.coefficients
        for e in self.difference_graph.edges:
            gap = abs(c1.get(e, 0.0) - c2.get(e, 0.0))
            if gap < SEPARATION_MARGIN:
                raise ValueError(
                    f"changed coefficient on {e} separated by only {gap}")


def recompute_difference_graph(scm1, scm2):
    """The difference graph induced by two SCMs: an edge wherever their
    direct effects (absent edge = 0) disagree."""
    if set(scm1.dag.vertices) != set(scm2.dag.vertices):
        raise ValueError("SCMs are over different vertex sets")
    c1, c2 = scm1.coefficients, scm2.coefficients
    changed = [e for e in (scm1.dag.edges | scm2.dag.edges)
               if c1.get(e, 0.0) != c2.get(e, 0.0)]
    return DifferenceGraph(vertices=scm1.dag.vertices, edges=changed)


def _draw_coefficient(rng):
    lo, hi = COEFFICIENT_RANGE
    magnitude = rng.uniform(lo, hi)
    return magnitude if rng.random() < 0.5 else -magnitude


def _partner_dags(g1, d, shared_order):
    """Every DAG forming a compatible pair with ``g1`` under ``d``.

    A partner must contain the symmetric difference of g1 and the D-edges
    and may add any subset of the D-edges g1 already has (same edge, two
    coefficients).  Deterministic order.
    """
    base = g1.edges ^ d.edges
    optional = sorted(g1.edges & d.edges)
    partners = []
    for r in range(len(optional) + 1):
        for extra in itertools.combinations(optional, r):
            edges = base | set(extra)
            try:
                g2 = CausalDag(vertices=g1.vertices, edges=edges)
            except ValueError:
                continue
            if shared_order and not shares_topological_order(g1, g2):
                continue
            partners.append(g2)
    return partners


def _random_order_pair(d, shared_order, rng):
    """Structure pair for graphs beyond the enumeration cap, built from a
    randomized vertex ordering."""
    vertices = list(d.vertices)

    def random_topological_order():
        remaining = dict.fromkeys(vertices)
        indegree = {v: len(d.parents(v)) for v in vertices}
        order = []
        while remaining:
            ready = [v for v in remaining if indegree[v] == 0]
            pick = ready[int(rng.integers(len(ready)))]
            del remaining[pick]
            order.append(pick)
            for c in d.children(pick):
                if c in remaining:
                    indegree[c] -= 1
        return order

    if shared_order:
        order = random_topological_order()
        pos = {v: i for i, v in enumerate(order)}
        shared = [(t, h) for t, h in itertools.permutations(vertices, 2)
                  if pos[t] < pos[h] and (t, h) not in d.edges
                  and rng.random() < 0.25]
        e1, e2 = set(shared), set(shared)
        for e in sorted(d.edges):
            lot = rng.random()
            if lot < 2 / 3:
                e1.add(e)
            if lot >= 1 / 3:
                e2.add(e)
        return (CausalDag(vertices=vertices, edges=e1),
                CausalDag(vertices=vertices, edges=e2))

    for _ in range(32):
        order = [str(v) for v in rng.permutation(vertices)]
        pos = {v: i for i, v in enumerate(order)}
        forward = sorted(e for e in d.edges if pos[e[0]] < pos[e[1]])
        backward = sorted(e for e in d.edges if pos[e[0]] > pos[e[1]])
        shared = [(t, h) for t, h in itertools.permutations(vertices, 2)
                  if pos[t] < pos[h] and (t, h) not in d.edges
                  and rng.random() < 0.25]
        e1 = set(forward) | set(shared)
        e2 = set(backward) | set(shared)
        for e in forward:
            if rng.random() < 1 / 3:
                e2.add(e)
        try:
            return (CausalDag(vertices=vertices, edges=e1),
                    CausalDag(vertices=vertices, edges=e2))
        except ValueError:
            continue
    order = [str(v) for v in rng.permutation(vertices)]
    pos = {v: i for i, v in enumerate(order)}
    e1 = {e for e in d.edges if pos[e[0]] < pos[e[1]]}
    e2 = d.edges - e1
    return (CausalDag(vertices=vertices, edges=e1),
            CausalDag(vertices=vertices, edges=e2))


def sample_compatible_pair(d, shared_order=False, seed=0):
    """Draw a linear-SCM pair whose difference graph is exactly ``d``.

    Structure first: within the enumeration cap the first DAG is drawn
    uniformly from the oracle's compatible-DAG enumeration and its partner
    uniformly from that DAG's valid partners; beyond the cap a randomized
    topological-order construction is used.  Coefficients of changed edges
    come from +-Uniform[0.2, 1.0], redrawn until the two models differ by at
    least the 0.2 separation margin; unchanged edges share one draw.  Noise
    scales are 1.0.  Deterministic given the seed.
    """
    rng = np.random.default_rng(seed)
    if len(d.vertices) <= VERTEX_CAP:
        candidates = enumerate_compatible_dags(d, shared_order)
        g1 = candidates[int(rng.integers(len(candidates)))]
        partners = _partner_dags(g1, d, shared_order)
        g2 = partners[int(rng.integers(len(partners)))]
    else:
        if shared_order and not d.is_acyclic():
            raise ValueError(
                "difference graph is cyclic, so no pair of causal models "
                "can share a topological order")
        g1, g2 = _random_order_pair(d, shared_order, rng)

    coeff1, coeff2 = {}, {}
    for e in sorted(g1.edges | g2.edges):
        in1, in2 = e in g1.edges, e in g2.edges
        if e in d.edges:
            if in1 and in2:
                a1 = _draw_coefficient(rng)
                a2 = _draw_coefficient(rng)
                while abs(a1 - a2) < SEPARATION_MARGIN:
                    a2 = _draw_coefficient(rng)
                coeff1[e], coeff2[e] = a1, a2
            elif in1:
                coeff1[e] = _draw_coefficient(rng)
            else:
                coeff2[e] = _draw_coefficient(rng)
        else:
            shared_draw = _draw_coefficient(rng)
            coeff1[e] = coeff2[e] = shared_draw

    scm1 = LinearScm(dag=g1, coefficients=coeff1)
    scm2 = LinearScm(dag=g2, coefficients=coeff2)
    return ScmPair(scm1=scm1, scm2=scm2, difference_graph=d)


def sample_dataset(scm, n, seed=0):
    """Ancestral sampling: ``n`` rows from the SCM, deterministic per seed.

    Vertices are evaluated in topological order; each equals the weighted
    sum of its sampled parents plus scaled noise.  Columns follow the DAG's
    vertex order.
    """
    if n < 1:
        raise ValueError("need at least one row")
    rng = np.random.default_rng(seed)
    values = {}
    root3 = np.sqrt(3.0)
    for v in scm.dag.topological_order():
        if scm.noise_family == GAUSSIAN:
            noise = rng.standard_normal(n)
        else:
            noise = rng.uniform(-root3, root3, n)
        total = scm.noise_scales[v] * noise
        for p in scm.dag.parents(v):
            total = total + scm.coefficients[(p, v)] * values[p]
        values[v] = total
    matrix = np.column_stack([values[v] for v in scm.dag.vertices])
    return Dataset(scm.dag.vertices, matrix, CONTINUOUS)


def ground_truth_direct(scm, x, y):
    """The path coefficient on x -> y; 0.0 when the edge is absent."""
    for v in (x, y):
        if v not in scm.dag:
            raise KeyError(f"unknown vertex {v!r}")
    return scm.coefficients.get((x, y), 0.0)


def ground_truth_total_linear(scm, x, y):
    """Total effect of x on y in a linear SCM: the sum over all directed
    x-to-y paths of the product of coefficients along each path."""
    for v in (x, y):
        if v not in scm.dag:
            raise KeyError(f"unknown vertex {v!r}")
    effect = {v: 0.0 for v in scm.dag.vertices}
    effect[x] = 1.0
    for v in scm.dag.topological_order():
        if v == x:
            continue
        effect[v] = sum(scm.coefficients[(p, v)] * effect[p]
                        for p in scm.dag.parents(v))
    return effect[y]
