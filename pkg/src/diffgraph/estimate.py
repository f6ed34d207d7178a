"""Turn identified formulas plus observational data into numbers.

Three estimators live here.  The discrete adjustment formula realizes
P(y|do(x)) as a plug-in sum of empirical frequencies over the adjustment
strata.  The partial regression coefficient realizes the linear direct
effect as the coefficient of the exposure in an ordinary least-squares fit,
computed through an SVD rather than normal equations.  `causal_change`
applies a verdict's formula to two datasets independently (the same
adjustment set works in both populations, which is what the identification
step certified) and reports the difference.

Everything is a deterministic function of its inputs; there is no internal
randomness anywhere.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .graphs import _check_label
from .identify import NOT_IDENTIFIABLE, NULL_EFFECT

DISCRETE = "discrete"
CONTINUOUS = "continuous"

RANK_TOLERANCE = 1e-10
ROW_SUM_TOLERANCE = 1e-9


class PositivityError(ValueError):
    """An observed adjustment stratum has no data for some exposure value,
    so the plug-in conditional P(y|x,w) is undefined there."""

    def __init__(self, message, stratum=None, exposure_value=None):
        super().__init__(message)
        self.stratum = stratum
        self.exposure_value = exposure_value


class SingularDesignError(ValueError):
    """The regression design matrix is rank-deficient beyond tolerance
    (collinear covariates)."""


class Dataset:
    """A complete rectangular sample: rows are units, columns are variables.

    Parameters
    ----------
    variable_names : sequence of str
    rows : array-like, shape (N, len(variable_names))
    kind : {"discrete", "continuous"}
        Discrete data must be non-negative integer codes; the cardinality of
        a variable is one plus its largest observed code.
    """

    def __init__(self, variable_names, rows, kind):
        names = tuple(variable_names)
        for name in names:
            _check_label(name)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        if kind not in (DISCRETE, CONTINUOUS):
            raise ValueError(f"kind must be {DISCRETE!r} or {CONTINUOUS!r}")
        data = np.asarray(rows, dtype=float)
        if data.ndim != 2 or data.shape[1] != len(names):
            raise ValueError(
                f"rows must be an N x {len(names)} matrix, got shape "
                f"{data.shape}")
        if not np.all(np.isfinite(data)):
            raise ValueError("dataset contains non-finite cells")
        if kind == DISCRETE:
            if np.any(data < 0) or np.any(data != np.floor(data)):
                raise ValueError(
                    "discrete data must be non-negative integer codes")
        self.variable_names = names
        self.rows = data
        self.kind = kind
        self._index = {v: i for i, v in enumerate(names)}

    def __len__(self):
        return self.rows.shape[0]

    def column(self, name):
        if name not in self._index:
            raise KeyError(f"unknown variable {name!r}")
        return self.rows[:, self._index[name]]

    def codes(self, name):
        """Integer codes of a discrete column."""
        return self.column(name).astype(np.int64)

    def cardinality(self, name):
        """1 + largest observed code of a discrete column."""
        return int(self.codes(name).max()) + 1

    @classmethod
    def from_csv(cls, path, kind):
        """Read a dataset from CSV with a header row of variable names."""
        with open(path, "r", encoding="utf-8") as fh:
            header = fh.readline().strip()
            if not header:
                raise ValueError(f"{path}: missing header row")
            names = [c.strip() for c in header.split(",")]
            try:
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore", UserWarning)
                    data = np.loadtxt(fh, delimiter=",", ndmin=2)
            except ValueError as exc:
                raise ValueError(f"{path}: {exc}") from None
        if data.size == 0:
            raise ValueError(f"{path}: no data rows")
        return cls(names, data, kind)

    def to_csv(self, path):
        fmt = "%d" if self.kind == DISCRETE else "%.17g"
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(",".join(self.variable_names) + "\n")
            np.savetxt(fh, self.rows, fmt=fmt, delimiter=",")


@dataclass
class InterventionalTable:
    """P(y|do(x)) on a grid of exposure values by outcome values.

    ``probabilities[i][j]`` is the estimated probability of outcome value
    ``outcome_values[j]`` under do(exposure = exposure_values[i]); every row
    sums to one.
    """

    exposure_values: tuple
    outcome_values: tuple
    probabilities: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probabilities, dtype=float)
        if p.shape != (len(self.exposure_values), len(self.outcome_values)):
            raise ValueError("probability matrix shape does not match the "
                             "value grids")
        sums = p.sum(axis=1)
        if np.any(np.abs(sums - 1.0) > ROW_SUM_TOLERANCE):
            raise ValueError(f"rows must sum to 1, got {sums}")
        self.probabilities = p

    def as_dict(self):
        return {"exposure_values": list(self.exposure_values),
                "outcome_values": list(self.outcome_values),
                "probabilities": self.probabilities.tolist()}


@dataclass
class ChangeTable:
    """Elementwise difference of two interventional tables on one grid.

    Rows sum to zero (each is a difference of two distributions), so this is
    deliberately not an InterventionalTable.
    """

    exposure_values: tuple
    outcome_values: tuple
    values: np.ndarray

    def as_dict(self):
        return {"exposure_values": list(self.exposure_values),
                "outcome_values": list(self.outcome_values),
                "values": self.values.tolist()}


@dataclass
class CausalChangeReport:
    """Effect estimates for both populations plus their difference.

    For the total effect the population values are InterventionalTable
    objects and ``change`` is a ChangeTable; for the direct effect all three
    are plain floats.
    """

    quantity: str
    population1_value: object
    population2_value: object
    change: object
    adjustment_set: tuple

    def as_dict(self):
        def convert(v):
            return v.as_dict() if hasattr(v, "as_dict") else v
        return {"quantity": self.quantity,
                "population1_value": convert(self.population1_value),
                "population2_value": convert(self.population2_value),
                "change": convert(self.change),
                "adjustment_set": list(self.adjustment_set)}


def _discrete_setup(data, x, y, w):
    if data.kind != DISCRETE:
        raise ValueError("the adjustment formula needs discrete data")
    w = tuple(w)
    if x in w or y in w:
        raise ValueError("exposure and outcome must not be in the "
                         "adjustment set")
    if x == y:
        raise ValueError("exposure and outcome must be distinct")
    for v in (x, y) + w:
        if v not in data.variable_names:
            raise KeyError(f"unknown variable {v!r}")
    return w


def adjustment_total(data, x, y, w, laplace=None,
                     exposure_levels=None, outcome_levels=None):
    """Plug-in adjustment estimate of P(y|do(x)).

    Computes sum over strata of the adjustment set ``w`` of
    P-hat(y|x,w) P-hat(w) from empirical frequencies.  Strata never observed
    contribute nothing; an observed stratum with no data at some exposure
    value raises PositivityError naming the offending cell, unless
    ``laplace`` is given, in which case the conditional is add-alpha
    smoothed over the outcome codes.

    ``exposure_levels`` / ``outcome_levels`` widen the value grids beyond
    what this dataset happens to contain (used when aligning two
    populations); values default to the observed cardinalities.
    """
    w = _discrete_setup(data, x, y, w)
    if laplace is not None and laplace <= 0:
        raise ValueError("laplace smoothing must be positive")
    n = len(data)
    xcol = data.codes(x)
    ycol = data.codes(y)
    kx = exposure_levels or data.cardinality(x)
    ky = outcome_levels or data.cardinality(y)
    if xcol.max() >= kx or ycol.max() >= ky:
        raise ValueError("observed codes exceed the requested level grid")

    if w:
        wcols = np.stack([data.codes(v) for v in w], axis=1)
        strata, stratum_of_row, counts = np.unique(
            wcols, axis=0, return_inverse=True, return_counts=True)
    else:
        strata = np.zeros((1, 0), dtype=np.int64)
        stratum_of_row = np.zeros(n, dtype=np.int64)
        counts = np.array([n])

    p = np.zeros((kx, ky))
    for s, (stratum, count) in enumerate(zip(strata, counts)):
        weight = count / n
        in_stratum = stratum_of_row == s
        for xv in range(kx):
            sel = in_stratum & (xcol == xv)
            m = int(sel.sum())
            if m == 0 and laplace is None:
                cell = ", ".join(f"{v}={val}" for v, val
                                 in zip(w, stratum.tolist()))
                where = f"{x}={xv}" + (f" within stratum {cell}" if w else "")
                raise PositivityError(
                    f"no observations for {where}; the distribution is not "
                    f"positive there (rerun with Laplace smoothing to "
                    f"estimate anyway)",
                    stratum=dict(zip(w, stratum.tolist())),
                    exposure_value=xv)
            tally = np.bincount(ycol[sel], minlength=ky).astype(float)
            if laplace is not None:
                conditional = (tally + laplace) / (m + laplace * ky)
            else:
                conditional = tally / m
            p[xv] += weight * conditional
    return InterventionalTable(tuple(range(kx)), tuple(range(ky)), p)


def marginal_table(data, x, y, exposure_levels=None, outcome_levels=None):
    """The null-effect table: P(y|do(x)) = P-hat(y), identical for every
    exposure value and computed from the same counts as P-hat(y)."""
    _discrete_setup(data, x, y, ())
    kx = exposure_levels or data.cardinality(x)
    ky = outcome_levels or data.cardinality(y)
    ycol = data.codes(y)
    marginal = np.bincount(ycol, minlength=ky) / len(data)
    p = np.tile(marginal, (kx, 1))
    return InterventionalTable(tuple(range(kx)), tuple(range(ky)), p)


def partial_regression_coefficient(data, x, y, w):
    """Coefficient of ``x`` in the least-squares fit of ``y`` on x plus
    ``w`` with an intercept.

    Solved through the SVD of the design matrix; raises SingularDesignError
    when the smallest singular value falls below RANK_TOLERANCE relative to
    the largest (collinear covariates).
    """
    if data.kind != CONTINUOUS:
        raise ValueError("partial regression needs continuous data")
    w = tuple(w)
    if x in w or y in w or x == y:
        raise ValueError("exposure, outcome and adjustment set must be "
                         "disjoint")
    for v in (x, y) + w:
        if v not in data.variable_names:
            raise KeyError(f"unknown variable {v!r}")
    n = len(data)
    if n <= len(w) + 2:
        raise ValueError(f"need more than {len(w) + 2} rows, got {n}")
    design = np.column_stack(
        [np.ones(n), data.column(x)] + [data.column(v) for v in w])
    target = data.column(y)
    u, s, vt = np.linalg.svd(design, full_matrices=False)
    if s[0] == 0.0 or s[-1] < RANK_TOLERANCE * s[0]:
        raise SingularDesignError(
            "design matrix is rank-deficient (collinear covariates)")
    beta = vt.T @ ((u.T @ target) / s)
    return float(beta[1])


def causal_change(verdict, data1, data2, x, y, laplace=None):
    """Apply an identifying verdict to two datasets and report the change.

    The verdict must not be NotIdentifiable.  Its formula decides the
    quantity: a total effect is estimated by the adjustment formula (or the
    outcome marginal when the effect is null) on each dataset over a common
    value grid, a direct effect by the partial regression coefficient.  The
    change is population 1 minus population 2, elementwise for tables.
    """
    if verdict.kind == NOT_IDENTIFIABLE:
        raise ValueError("verdict is NotIdentifiable; nothing to estimate")
    if data1.variable_names != data2.variable_names:
        raise ValueError("datasets have different variables")
    if data1.kind != data2.kind:
        raise ValueError("datasets have different kinds")
    w = tuple(verdict.adjustment_set or ())
    quantity = "direct" if verdict.formula.startswith("alpha(") else "total"

    if quantity == "direct":
        if verdict.kind == NULL_EFFECT:
            v1 = v2 = 0.0
        else:
            v1 = partial_regression_coefficient(data1, x, y, w)
            v2 = partial_regression_coefficient(data2, x, y, w)
        return CausalChangeReport("direct", v1, v2, v1 - v2, w)

    kx = max(data1.cardinality(x), data2.cardinality(x))
    ky = max(data1.cardinality(y), data2.cardinality(y))
    if verdict.kind == NULL_EFFECT:
        t1 = marginal_table(data1, x, y, kx, ky)
        t2 = marginal_table(data2, x, y, kx, ky)
    else:
        t1 = adjustment_total(data1, x, y, w, laplace, kx, ky)
        t2 = adjustment_total(data2, x, y, w, laplace, kx, ky)
    change = ChangeTable(t1.exposure_values, t1.outcome_values,
                         t1.probabilities - t2.probabilities)
    return CausalChangeReport("total", t1, t2, change, w)


def format_interventional_table(table, x, y):
    """Aligned-column text rendering of one interventional table."""
    header = [x, y, f"P({y}|do({x}))"]
    rows = []
    for i, xv in enumerate(table.exposure_values):
        for j, yv in enumerate(table.outcome_values):
            rows.append([str(xv), str(yv),
                         f"{table.probabilities[i, j]:.6f}"])
    return _align([header] + rows)


def format_change_report(report, x, y):
    """Aligned-column text rendering of a causal-change report."""
    adj = ", ".join(report.adjustment_set) if report.adjustment_set else "()"
    title = (f"{report.quantity} causal change for {x} -> {y} "
             f"(adjustment set: {adj})")
    if report.quantity == "direct":
        body = _align([
            ["population 1:", f"{report.population1_value:.6f}"],
            ["population 2:", f"{report.population2_value:.6f}"],
            ["change:", f"{report.change:.6f}"],
        ])
        return title + "\n" + body
    header = [x, y, "P1(y|do(x))", "P2(y|do(x))", "change"]
    rows = []
    t1, t2, tc = (report.population1_value, report.population2_value,
                  report.change)
    for i, xv in enumerate(t1.exposure_values):
        for j, yv in enumerate(t1.outcome_values):
            rows.append([str(xv), str(yv),
                         f"{t1.probabilities[i, j]:.6f}",
                         f"{t2.probabilities[i, j]:.6f}",
                         f"{tc.values[i, j]:.6f}"])
    return title + "\n" + _align([header] + rows)


def _align(rows):
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
             for row in rows]
    return "\n".join(lines)
