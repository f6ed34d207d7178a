"""Closed-form identifiability decisions read off the difference graph alone.

Eight conditions drive the verdicts, in two regimes.  When the two causal
models are assumed to share a topological order (an acyclic difference
graph), conditions A.1/A.2 decide the total effect and C.1/C.2 the direct
effect.  Without that assumption the difference graph may be cyclic and the
strengthened conditions B.1/B.2 (total) and D.1/D.2 (direct) apply instead.

Every condition is a statement about reflexive ancestor sets in the
difference graph D:

* A.1: Y is an ancestor of X.  The exposure can never reach the outcome in
  any compatible model, so P(y|do(x)) = P(y) in both populations.
* A.2: X is an ancestor of Y and every other vertex is comparable to X
  (ancestor or descendant of it).  Then W^anc = ancestors(X) minus X is a
  back-door set in every compatible model.
* B.1 = A.1 plus X not an ancestor of Y;  B.2 = A.2 plus X on no cycle.
* C.1 = A.1 (null direct effect, alpha = 0).
* C.2: X is an ancestor of Y and every other vertex is comparable to Y;
  W^anc = ancestors(Y) minus {X, Y} is then a single-door set everywhere.
* D.1 = C.1 plus X not an ancestor of Y;  D.2 = C.2 plus Y on no cycle.

Verdicts carry the fired condition so output is self-explaining, and they
serialize to a JSON document with fixed keys {kind, condition,
adjustment_set, formula}.
"""

from dataclasses import dataclass, field

from .graphs import DifferenceGraph

NULL_EFFECT = "NullEffect"
ADJUSTMENT_IDENTIFIABLE = "AdjustmentIdentifiable"
NOT_IDENTIFIABLE = "NotIdentifiable"


@dataclass(frozen=True)
class EffectQuery:
    """A single identifiability question.

    Attributes
    ----------
    graph : DifferenceGraph
    exposure, outcome : str
        Distinct vertices of the graph (X and Y).
    shared_order_assumed : bool
        When True, the two underlying models are assumed to admit one common
        topological order; the graph must then be acyclic.
    """

    graph: DifferenceGraph
    exposure: str
    outcome: str
    shared_order_assumed: bool = False

    def __post_init__(self):
        for v in (self.exposure, self.outcome):
            if v not in self.graph:
                raise ValueError(f"unknown vertex {v!r}")
        if self.exposure == self.outcome:
            raise ValueError("exposure and outcome must be distinct")
        if self.shared_order_assumed and not self.graph.is_acyclic():
            raise ValueError(
                "difference graph is cyclic, which contradicts the "
                "shared-topological-order assumption")


@dataclass(frozen=True)
class IdentificationVerdict:
    """Outcome of an identifiability decision.

    ``adjustment_set`` is present (a tuple in vertex order) exactly when
    ``kind`` is AdjustmentIdentifiable.  ``condition`` names the clause that
    fired (A.1 through D.2), or "none" for NotIdentifiable and for verdicts
    produced by brute-force search.  ``witness``, attached only by the
    oracle on NotIdentifiable, is a pair of compatible DAGs that no single
    adjustment set serves.
    """

    kind: str
    condition: str = "none"
    adjustment_set: tuple = None
    formula: str = ""
    witness: tuple = field(default=None, compare=False)

    def as_dict(self):
        """JSON-ready dict with the fixed keys; witness only when present."""
        doc = {"kind": self.kind, "condition": self.condition,
               "formula": self.formula}
        if self.kind == ADJUSTMENT_IDENTIFIABLE:
            doc["adjustment_set"] = list(self.adjustment_set)
        if self.witness is not None:
            doc["witness"] = [g.to_edge_list() for g in self.witness]
        return doc


def total_null_formula(x, y):
    return f"P({y}|do({x})) = P({y})"


def total_adjustment_formula(x, y, w):
    if not w:
        return f"P({y}|do({x})) = P({y}|{x})"
    ws = ",".join(w)
    return f"P({y}|do({x})) = sum_{{{ws}}} P({y}|{x},{ws}) P({ws})"


def direct_null_formula(x, y):
    return f"alpha({x}->{y}) = 0"


def direct_adjustment_formula(x, y, w):
    covariates = ", ".join((x,) + tuple(w))
    return (f"alpha({x}->{y}) = coefficient of {x} in the regression "
            f"of {y} on {{{covariates}}}")


def _comparable_to(d, v, exempt):
    """True iff every vertex outside ``exempt`` is an ancestor or a
    descendant of ``v`` in ``d``."""
    reachable = d.ancestors(v) | d.descendants(v)
    return all(w in reachable for w in d.vertices if w not in exempt)


def _total_conditions(q):
    d, x, y = q.graph, q.exposure, q.outcome
    a1 = y in d.ancestors(x)
    a2 = x in d.ancestors(y) and _comparable_to(d, x, {x, y})
    return a1, a2


def _direct_conditions(q):
    d, x, y = q.graph, q.exposure, q.outcome
    c1 = y in d.ancestors(x)
    c2 = x in d.ancestors(y) and _comparable_to(d, y, {x, y})
    return c1, c2


def _total_adjustment_verdict(q, condition):
    d, x, y = q.graph, q.exposure, q.outcome
    w_anc = tuple(d.sort_vertices(d.ancestors(x) - {x}))
    return IdentificationVerdict(
        kind=ADJUSTMENT_IDENTIFIABLE, condition=condition,
        adjustment_set=w_anc, formula=total_adjustment_formula(x, y, w_anc))


def _direct_adjustment_verdict(q, condition):
    d, x, y = q.graph, q.exposure, q.outcome
    w_anc = tuple(d.sort_vertices(d.ancestors(y) - {x, y}))
    return IdentificationVerdict(
        kind=ADJUSTMENT_IDENTIFIABLE, condition=condition,
        adjustment_set=w_anc, formula=direct_adjustment_formula(x, y, w_anc))


def identify_total_shared_order(q):
    """Total-effect verdict under the shared-topological-order assumption.

    NullEffect under A.1, AdjustmentIdentifiable with
    W^anc = ancestors(X) \\ {X} under A.2, otherwise NotIdentifiable.
    """
    if not q.shared_order_assumed:
        raise ValueError("query must set shared_order_assumed")
    a1, a2 = _total_conditions(q)
    if a1:
        return IdentificationVerdict(
            kind=NULL_EFFECT, condition="A.1",
            formula=total_null_formula(q.exposure, q.outcome))
    if a2:
        return _total_adjustment_verdict(q, "A.2")
    return IdentificationVerdict(kind=NOT_IDENTIFIABLE)


def identify_total_general(q):
    """Total-effect verdict with no ordering assumption (graph may be cyclic).

    NullEffect under B.1, AdjustmentIdentifiable under B.2 (same W^anc as
    A.2), otherwise NotIdentifiable.
    """
    d, x = q.graph, q.exposure
    a1, a2 = _total_conditions(q)
    if a1 and x not in d.ancestors(q.outcome):
        return IdentificationVerdict(
            kind=NULL_EFFECT, condition="B.1",
            formula=total_null_formula(x, q.outcome))
    if a2 and d.ancestors(x) & d.descendants(x) == {x}:
        return _total_adjustment_verdict(q, "B.2")
    return IdentificationVerdict(kind=NOT_IDENTIFIABLE)


def identify_direct_shared_order(q):
    """Direct-effect (path coefficient) verdict under the shared-order
    assumption; linear models are presumed.

    NullEffect (alpha = 0) under C.1, AdjustmentIdentifiable with
    W^anc = ancestors(Y) \\ {X, Y} under C.2, otherwise NotIdentifiable.
    """
    if not q.shared_order_assumed:
        raise ValueError("query must set shared_order_assumed")
    c1, c2 = _direct_conditions(q)
    if c1:
        return IdentificationVerdict(
            kind=NULL_EFFECT, condition="C.1",
            formula=direct_null_formula(q.exposure, q.outcome))
    if c2:
        return _direct_adjustment_verdict(q, "C.2")
    return IdentificationVerdict(kind=NOT_IDENTIFIABLE)


def identify_direct_general(q):
    """Direct-effect verdict with no ordering assumption.

    NullEffect under D.1, AdjustmentIdentifiable under D.2 (same W^anc as
    C.2), otherwise NotIdentifiable.
    """
    d, x, y = q.graph, q.exposure, q.outcome
    c1, c2 = _direct_conditions(q)
    if c1 and x not in d.ancestors(y):
        return IdentificationVerdict(
            kind=NULL_EFFECT, condition="D.1",
            formula=direct_null_formula(x, y))
    if c2 and d.ancestors(y) & d.descendants(y) == {y}:
        return _direct_adjustment_verdict(q, "D.2")
    return IdentificationVerdict(kind=NOT_IDENTIFIABLE)


def identify_total(q):
    """Route a total-effect query to the checker matching its assumption."""
    if q.shared_order_assumed:
        return identify_total_shared_order(q)
    return identify_total_general(q)


def identify_direct(q):
    """Route a direct-effect query to the checker matching its assumption."""
    if q.shared_order_assumed:
        return identify_direct_shared_order(q)
    return identify_direct_general(q)
