"""Directed-graph core shared by every other module.

Two graph flavors live here.  A :class:`DifferenceGraph` records where two
structural causal models disagree: an edge X -> Y asserts a mechanism change
at Y with respect to X, absence of the edge asserts equal direct effects in
both models (both zero, or both present with the same coefficient).  Cycles
are legal in a difference graph.  A :class:`CausalDag` is an ordinary acyclic
causal diagram and supports d-separation queries.

Ancestor and descendant sets are REFLEXIVE throughout (a vertex is its own
ancestor and descendant); parent and child sets are not.  Every decision
procedure in the package is written against this convention.

Graphs are immutable after construction and safe to share across threads.
All set-valued results are reported in vertex order, which is the order of
first appearance (explicit declarations first, then edge endpoints).
"""

from collections import deque


class ParseError(ValueError):
    """Malformed edge-list text.  Carries the offending 1-based line number."""

    def __init__(self, line_number, message):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


def _check_label(name):
    if not name:
        raise ValueError("variable names must be non-empty")
    if "," in name or any(ch.isspace() for ch in name):
        raise ValueError(
            f"variable name {name!r} contains whitespace or a comma")


class _Digraph:
    """Common machinery for both graph flavors.

    Parameters
    ----------
    vertices : iterable of str
        Declared vertex names, in order.  Duplicates are dropped.
    edges : iterable of (str, str)
        Directed edges as (tail, head).  Endpoints not already declared are
        appended to the vertex order as they appear.
    """

    def __init__(self, vertices=(), edges=()):
        order = []
        seen = set()
        for v in vertices:
            _check_label(v)
            if v not in seen:
                seen.add(v)
                order.append(v)
        edge_set = set()
        for tail, head in edges:
            for v in (tail, head):
                _check_label(v)
                if v not in seen:
                    seen.add(v)
                    order.append(v)
            if tail == head:
                raise ValueError(f"self-loop on {tail!r} is not allowed")
            edge_set.add((tail, head))
        self._vertices = tuple(order)
        self._edges = frozenset(edge_set)
        self._index = {v: i for i, v in enumerate(order)}
        self._parents = {v: [] for v in order}
        self._children = {v: [] for v in order}
        for tail, head in edge_set:
            self._parents[head].append(tail)
            self._children[tail].append(head)
        for v in order:
            self._parents[v].sort(key=self._index.__getitem__)
            self._children[v].sort(key=self._index.__getitem__)

    @property
    def vertices(self):
        """Vertex names as a tuple, in order of first appearance."""
        return self._vertices

    @property
    def edges(self):
        """The edge set as a frozenset of (tail, head) pairs."""
        return self._edges

    def __contains__(self, name):
        return name in self._index

    def __eq__(self, other):
        if not isinstance(other, _Digraph):
            return NotImplemented
        return (self._vertices == other._vertices
                and self._edges == other._edges)

    def __hash__(self):
        return hash((self._vertices, self._edges))

    def __repr__(self):
        edges = ", ".join(f"{t}->{h}" for t, h in self.sorted_edges())
        return (f"{type(self).__name__}(vertices={list(self._vertices)}, "
                f"edges=[{edges}])")

    def _require(self, name):
        if name not in self._index:
            raise KeyError(f"unknown vertex {name!r}")

    def parents(self, v):
        """Direct parents of ``v`` (non-reflexive), in vertex order."""
        self._require(v)
        return tuple(self._parents[v])

    def children(self, v):
        """Direct children of ``v`` (non-reflexive), in vertex order."""
        self._require(v)
        return tuple(self._children[v])

    def ancestors(self, v):
        """Reflexive ancestor set of ``v``.

        Returns every vertex with a directed path to ``v``, including ``v``
        itself (the reflexive transitive closure of the parent relation).

        Examples
        --------
        >>> g = DifferenceGraph(edges=[("W1", "X"), ("X", "W2"), ("X", "Y")])
        >>> sorted(g.ancestors("X"))
        ['W1', 'X']
        """
        self._require(v)
        seen = {v}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for p in self._parents[u]:
                if p not in seen:
                    seen.add(p)
                    queue.append(p)
        return seen

    def descendants(self, v):
        """Reflexive descendant set of ``v`` (dual of :meth:`ancestors`)."""
        self._require(v)
        seen = {v}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for c in self._children[u]:
                if c not in seen:
                    seen.add(c)
                    queue.append(c)
        return seen

    def is_acyclic(self):
        """True iff a topological order exists (Kahn's algorithm)."""
        indegree = {v: len(self._parents[v]) for v in self._vertices}
        queue = deque(v for v in self._vertices if indegree[v] == 0)
        visited = 0
        while queue:
            u = queue.popleft()
            visited += 1
            for c in self._children[u]:
                indegree[c] -= 1
                if indegree[c] == 0:
                    queue.append(c)
        return visited == len(self._vertices)

    def sort_vertices(self, names):
        """Sort an iterable of vertex names into this graph's vertex order."""
        return sorted(names, key=self._index.__getitem__)

    def sorted_edges(self):
        """Edges sorted by (tail, head) vertex order; deterministic."""
        key = self._index.__getitem__
        return sorted(self._edges, key=lambda e: (key(e[0]), key(e[1])))

    def to_edge_list(self):
        """Render the graph in the edge-list text format (round-trips)."""
        lines = [f"node {v}" for v in self._vertices]
        lines.extend(f"{t} -> {h}" for t, h in self.sorted_edges())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edge_list(cls, text):
        """Parse the edge-list text format.

        One item per line: ``node <name>`` declares a vertex, ``<tail> ->
        <head>`` declares an edge (and implicitly declares its endpoints),
        ``#`` starts a comment.  Vertex order is file order of first
        appearance.

        Raises
        ------
        ParseError
            On any malformed line, with the 1-based line number.
        """
        vertices, edges = _parse_edge_list_text(text)
        return cls(vertices=vertices, edges=edges)


def _parse_edge_list_text(text):
    vertices = []
    seen = set()
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" in line:
            parts = line.split("->")
            if len(parts) != 2:
                raise ParseError(lineno, "expected exactly one '->' per edge")
            tail, head = parts[0].strip(), parts[1].strip()
            for name in (tail, head):
                try:
                    _check_label(name)
                except ValueError as exc:
                    raise ParseError(lineno, str(exc)) from None
                if name not in seen:
                    seen.add(name)
                    vertices.append(name)
            if tail == head:
                raise ParseError(lineno, f"self-loop on {tail!r}")
            edges.append((tail, head))
        else:
            tokens = line.split()
            if len(tokens) == 2 and tokens[0] == "node":
                name = tokens[1]
                try:
                    _check_label(name)
                except ValueError as exc:
                    raise ParseError(lineno, str(exc)) from None
                if name not in seen:
                    seen.add(name)
                    vertices.append(name)
            else:
                raise ParseError(
                    lineno, f"cannot parse {line!r} (expected 'node <name>' "
                    "or '<tail> -> <head>')")
    return vertices, edges


class DifferenceGraph(_Digraph):
    """Directed graph of mechanism changes between two causal models.

    An edge X -> Y means the direct effect of X on Y differs between the two
    models; a missing edge means the direct effects agree exactly.  Cycles
    are permitted: the two models may order their variables differently, and
    their disagreements need not be jointly orientable.
    """


class CausalDag(_Digraph):
    """An acyclic directed graph; raises ValueError on construction if cyclic.

    Examples
    --------
    >>> g = CausalDag(edges=[("X", "W"), ("W", "Y")])
    >>> g.d_separated("X", "Y", {"W"})
    True
    """

    def __init__(self, vertices=(), edges=()):
        super().__init__(vertices=vertices, edges=edges)
        if not self.is_acyclic():
            on_cycle = self._cyclic_part()
            raise ValueError(
                f"graph is not acyclic (cycle through {on_cycle})")

    def _cyclic_part(self):
        indegree = {v: len(self._parents[v]) for v in self._vertices}
        queue = deque(v for v in self._vertices if indegree[v] == 0)
        removed = set()
        while queue:
            u = queue.popleft()
            removed.add(u)
            for c in self._children[u]:
                indegree[c] -= 1
                if indegree[c] == 0:
                    queue.append(c)
        return [v for v in self._vertices if v not in removed]

    def topological_order(self):
        """A topological order, deterministic (ties broken by vertex order)."""
        indegree = {v: len(self._parents[v]) for v in self._vertices}
        ready = [v for v in self._vertices if indegree[v] == 0]
        out = []
        while ready:
            ready.sort(key=self._index.__getitem__)
            u = ready.pop(0)
            out.append(u)
            for c in self._children[u]:
                indegree[c] -= 1
                if indegree[c] == 0:
                    ready.append(c)
        return tuple(out)

    def d_separated(self, x, y, w=()):
        """Decide whether ``w`` d-separates ``x`` from ``y``.

        True iff every path between ``x`` and ``y`` is blocked by ``w``: a
        non-collider on the path blocks when it is in ``w``, a collider
        blocks unless it has a descendant in ``w``.  Implemented with the
        standard reachability sweep over (vertex, travel direction) states
        rather than path enumeration, so it stays linear in the edge count.

        Parameters
        ----------
        x, y : str
            Distinct vertices, neither inside ``w``.
        w : collection of str
            Conditioning set (may be empty).

        Raises
        ------
        KeyError
            If any named vertex is unknown.
        ValueError
            If ``x == y`` or ``x``/``y`` overlaps ``w``.
        """
        self._require(x)
        self._require(y)
        w = frozenset(w)
        for u in w:
            self._require(u)
        if x == y:
            raise ValueError("x and y must be distinct")
        if x in w or y in w:
            raise ValueError("x and y must not be members of w")

        in_anc_w = set()
        for u in w:
            in_anc_w |= self.ancestors(u)

        # Travel states: (vertex, direction). UP means the trail arrived at
        # the vertex from one of its children, DOWN from one of its parents.
        UP, DOWN = 0, 1
        visited = set()
        frontier = deque([(x, UP)])
        while frontier:
            v, direction = frontier.popleft()
            if (v, direction) in visited:
                continue
            visited.add((v, direction))
            if v == y:
                return False
            if direction == UP and v not in w:
                for p in self._parents[v]:
                    frontier.append((p, UP))
                for c in self._children[v]:
                    frontier.append((c, DOWN))
            elif direction == DOWN:
                if v not in w:
                    for c in self._children[v]:
                        frontier.append((c, DOWN))
                if v in in_anc_w:
                    for p in self._parents[v]:
                        frontier.append((p, UP))
        return True


def shares_topological_order(g1, g2):
    """True iff one vertex ordering is valid for both DAGs.

    Equivalent to the edge union of ``g1`` and ``g2`` being acyclic.  Both
    graphs must share one vertex set (raises ValueError otherwise).
    """
    if set(g1.vertices) != set(g2.vertices):
        raise ValueError("graphs are over different vertex sets")
    union = _Digraph(vertices=g1.vertices, edges=g1.edges | g2.edges)
    return union.is_acyclic()
