"""Three-party, two-setting, two-outcome Bell expressions on Gaussian states.

An expression is a linear combination of correlators <prod P_j(setting)>
over nonempty party subsets, plus a classical bound.  Under displaced-parity
measurements each correlator is a parity correlator of the corresponding
reduced state, so the whole framework closes over covariance matrices.

File format (``#`` starts a comment)::

    <coefficient> <selA> <selB> <selC>     selectors A0|A1|- etc., - = absent
    <coefficient> p(+-+|010)               probability term, expanded on load
    bound <real>

Constant terms (all parties absent, or the 1/8 offsets of probability terms)
are folded into the bound.  The Svetlichny expression ships as the built-in
named ``svetlichny``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from itertools import product
from typing import Mapping, Sequence

import numpy as np

from . import optimize as _optimize
from .errors import ConsistencyError, DimensionMismatch, ParseError
from .states import reduce_modes
from .svetlichny import (
    PRIMED_SUBSETS,
    TERM_SIGNS,
    MaximizationResult,
    MeasurementSettings,
    maximize_restricted,
)
from .wigner import GaussianKernel

_PARTY_LETTERS = "ABC"
Selector = tuple[int | None, int | None, int | None]

_PROBABILITY_RE = re.compile(r"^p\(([+-]{3})\|([01]{3})\)$")


@dataclass(frozen=True)
class BellExpression:
    name: str
    bound: float
    terms: tuple[tuple[float, Selector], ...]

    def __post_init__(self):
        if not self.terms:
            raise ParseError("expression has no correlator terms")

    def __str__(self) -> str:
        return format_expression(self)


def _canonical_terms(acc: Mapping[Selector, float]) -> tuple[tuple[float, Selector], ...]:
    terms = [(coeff, sel) for sel, coeff in acc.items() if coeff != 0.0]
    terms.sort(key=lambda t: tuple(2 if s is None else s for s in t[1]))
    return tuple(terms)


def svetlichny_expression() -> BellExpression:
    """The built-in Svetlichny expression (setting 1 = primed), bound 4."""
    acc: dict[Selector, float] = {}
    for sign, subset in zip(TERM_SIGNS, PRIMED_SUBSETS):
        sel = tuple(1 if (j + 1) in subset else 0 for j in range(3))
        acc[sel] = sign
    return BellExpression(name="svetlichny", bound=4.0, terms=_canonical_terms(acc))


def _parse_selector(token: str, party: int, lineno: int) -> int | None:
    if token == "-":
        return None
    letter = _PARTY_LETTERS[party]
    if len(token) == 2 and token[0] == letter and token[1] in "01":
        return int(token[1])
    raise ParseError(f"bad selector {token!r} for party {letter}", line=lineno)


def _parse_coefficient(token: str, lineno: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise ParseError(f"bad coefficient {token!r}", line=lineno) from None


def parse_expression(text: str, name: str = "expression") -> BellExpression:
    """Parse the line format above into a validated expression."""
    acc: dict[Selector, float] = {}
    bound: float | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0].lower() == "bound":
            if len(tokens) != 2:
                raise ParseError("bound line must be 'bound <real>'", line=lineno)
            if bound is not None:
                raise ParseError("duplicate bound line", line=lineno)
            bound = _parse_coefficient(tokens[1], lineno)
            continue
        if len(tokens) == 2:
            match = _PROBABILITY_RE.match(tokens[1])
            if not match:
                raise ParseError(f"bad probability token {tokens[1]!r}", line=lineno)
            coeff = _parse_coefficient(tokens[0], lineno)
            outcomes = tuple(1 if ch == "+" else -1 for ch in match.group(1))
            settings = tuple(int(ch) for ch in match.group(2))
            _expand_probability(acc, coeff, outcomes, settings)
            # the constant 1/8 of the expansion is folded into the bound below
            bound_shift = coeff / 8.0
            acc["__constant__"] = acc.get("__constant__", 0.0) + bound_shift  # type: ignore[index]
            continue
        if len(tokens) != 4:
            raise ParseError(f"expected 4 tokens, got {len(tokens)}", line=lineno)
        coeff = _parse_coefficient(tokens[0], lineno)
        sel = tuple(_parse_selector(tokens[1 + p], p, lineno) for p in range(3))
        if sel == (None, None, None):
            acc["__constant__"] = acc.get("__constant__", 0.0) + coeff  # type: ignore[index]
            continue
        acc[sel] = acc.get(sel, 0.0) + coeff
    if bound is None:
        raise ParseError("missing 'bound <real>' line")
    constant = acc.pop("__constant__", 0.0)  # type: ignore[arg-type]
    terms = _canonical_terms(acc)
    if not terms:
        raise ParseError("expression has no correlator terms")
    return BellExpression(name=name, bound=bound - constant, terms=terms)


def _expand_probability(acc, coeff, outcomes, settings) -> None:
    """Fold p(abc|xyz) = (1/8)[1 + sum of signed correlators] into ``acc``."""
    for subset in product((False, True), repeat=3):
        if not any(subset):
            continue  # the constant part is handled by the caller
        sign = 1.0
        sel: list[int | None] = [None, None, None]
        for party, present in enumerate(subset):
            if present:
                sign *= outcomes[party]
                sel[party] = settings[party]
        key = tuple(sel)
        acc[key] = acc.get(key, 0.0) + coeff * sign / 8.0


def format_expression(expr: BellExpression) -> str:
    lines = [f"# {expr.name}"]
    for coeff, sel in expr.terms:
        tokens = [f"{coeff:.17g}"]
        for party, s in enumerate(sel):
            tokens.append("-" if s is None else f"{_PARTY_LETTERS[party]}{s}")
        lines.append(" ".join(tokens))
    lines.append(f"bound {expr.bound:.17g}")
    return "\n".join(lines) + "\n"


def load_expression(source) -> BellExpression:
    """Load an expression from a file path, or return the named built-in."""
    if str(source) == "svetlichny":
        return svetlichny_expression()
    with open(source, "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse_expression(text, name=str(source))


class CorrelatorTable:
    """All 26 displaced-parity correlators of one (state, settings) pair."""

    def __init__(self, entries: dict[tuple[tuple[int, int], ...], float]):
        self.entries = entries

    @staticmethod
    def _key(sel: Selector) -> tuple[tuple[int, int], ...]:
        return tuple((party, s) for party, s in enumerate(sel) if s is not None)

    def value(self, sel: Selector) -> float:
        key = self._key(sel)
        if key not in self.entries:
            raise DimensionMismatch(f"no correlator entry for selector {sel!r}")
        return self.entries[key]


def correlator_table(sigma: np.ndarray, settings: MeasurementSettings) -> CorrelatorTable:
    """Compute the full table: 6 singles, 12 pairs, 8 triples."""
    sigma = np.asarray(sigma, dtype=float)
    points = np.stack([settings.xi, settings.xi_prime])  # (setting, party, 2)
    entries: dict[tuple[tuple[int, int], ...], float] = {}
    for r in (1, 2, 3):
        for parties in _party_subsets(r):
            kernel = GaussianKernel(reduce_modes(sigma, [p + 1 for p in parties]))
            for choice in product((0, 1), repeat=r):
                point = np.concatenate([points[s, p] for s, p in zip(choice, parties)])
                entries[tuple(zip(parties, choice))] = kernel.parity(point)
    return CorrelatorTable(entries)


def _party_subsets(size: int) -> list[tuple[int, ...]]:
    return [s for s in _ALL_SUBSETS if len(s) == size]


_ALL_SUBSETS = [
    tuple(p for p in range(3) if mask & (1 << p)) for mask in range(1, 8)
]


def correlators_to_probabilities(
    table: CorrelatorTable, x: int, y: int, z: int
) -> dict[tuple[int, int, int], float]:
    """Outcome distribution p(abc|xyz) from the dichotomic expansion.

    Probabilities sum to one by construction; values below -1e-12 indicate an
    inconsistent table and raise :class:`ConsistencyError`.
    """
    sel_settings = (x, y, z)
    probs: dict[tuple[int, int, int], float] = {}
    for outcomes in product((1, -1), repeat=3):
        total = 1.0
        for subset in _ALL_SUBSETS:
            sel: list[int | None] = [None, None, None]
            sign = 1.0
            for p in subset:
                sel[p] = sel_settings[p]
                sign *= outcomes[p]
            total += sign * table.value(tuple(sel))
        p_abc = total / 8.0
        if p_abc < -1e-12:
            raise ConsistencyError(
                f"negative probability {p_abc!r} for outcomes {outcomes} at settings {sel_settings}"
            )
        probs[outcomes] = p_abc
    return probs


def probabilities_to_correlators(
    probs: Mapping[tuple[int, int, int], float], x: int, y: int, z: int
) -> dict[tuple[tuple[int, int], ...], float]:
    """Contract an outcome distribution back into its 7 correlators."""
    sel_settings = (x, y, z)
    out: dict[tuple[tuple[int, int], ...], float] = {}
    for subset in _ALL_SUBSETS:
        value = 0.0
        for outcomes, p in probs.items():
            sign = 1.0
            for party in subset:
                sign *= outcomes[party]
            value += sign * p
        out[tuple((p, sel_settings[p]) for p in subset)] = value
    return out


def evaluate_table(expr: BellExpression, table: CorrelatorTable) -> float:
    return sum(coeff * table.value(sel) for coeff, sel in expr.terms)


def evaluate(expr: BellExpression, sigma: np.ndarray, settings: MeasurementSettings) -> float:
    """Expression value on a state at given settings."""
    return evaluate_table(expr, correlator_table(sigma, settings))


def _expression_objective(expr: BellExpression, sigma: np.ndarray):
    """|expression| as a function of the twelve setting coordinates."""
    groups: dict[tuple[int, ...], list[tuple[float, tuple[int, ...]]]] = {}
    for coeff, sel in expr.terms:
        parties = tuple(p for p, s in enumerate(sel) if s is not None)
        choice = tuple(s for s in sel if s is not None)
        groups.setdefault(parties, []).append((coeff, choice))
    compiled = []
    for parties, items in groups.items():
        kernel = GaussianKernel(reduce_modes(sigma, [p + 1 for p in parties]))
        coeffs = np.array([c for c, _ in items])
        choices = np.array([ch for _, ch in items], dtype=int)  # (m, k)
        compiled.append((parties, kernel, coeffs, choices))

    def objective(v):
        v = np.asarray(v, dtype=float)
        stacked = np.stack([v[:6].reshape(3, 2), v[6:].reshape(3, 2)])
        total = 0.0
        for parties, kernel, coeffs, choices in compiled:
            cols = [stacked[choices[:, i], parties[i]] for i in range(len(parties))]
            pts = np.concatenate(cols, axis=1)
            total += float(coeffs @ kernel.parity_batch(pts))
        return abs(total)

    return objective


def maximize_expression(
    expr: BellExpression,
    sigma: np.ndarray,
    opts: _optimize.OptimizerOptions | None = None,
) -> MaximizationResult:
    """Maximize |expression| over all measurement settings.

    Seeded with the origin and with the restricted Svetlichny optimum of the
    state (an antisymmetric momentum pattern, which is a strong heuristic for
    parity-based expressions); the remaining starts are random.
    """
    sigma = np.asarray(sigma, dtype=float)
    objective = _expression_objective(expr, sigma)
    restricted = maximize_restricted(sigma, opts)
    extra = [np.zeros(12), restricted.settings.to_flat()]
    result = _optimize.maximize(objective, 12, opts, extra_starts=extra)
    return MaximizationResult(
        value=result.value,
        settings=MeasurementSettings.from_flat(result.point),
        evaluations=restricted.evaluations + result.evaluations,
        converged=result.converged,
    )
