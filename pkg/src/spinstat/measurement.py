"""Projective spin measurements, joint outcome tables, and Bell's inequality.

Angles can be given either as floats (radians) or as :class:`~fractions.Fraction`
multiples of pi.  Fractional angles whose cosine is rational are evaluated
exactly, which covers the pi/3-style angles where the inequality's violation
is an identity between fractions.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Mapping, Sequence

import numpy as np

from .errors import ShapeError
from .exact import Rational
from .kets import Ket, Operator
from .rotations import HALF

Angle = Fraction | float  # Fraction means a rational multiple of pi
Outcome = tuple[str, ...]

_PI_RE = re.compile(r"^([+-]?)(?:(\d+)\*?)?pi(?:/(\d+))?$")


def parse_pi_angle(text: str) -> Fraction:
    """Parse ``"2pi/3"``-style text into a rational multiple of pi."""
    text = text.strip().replace(" ", "")
    if text == "0":
        return Fraction(0)
    m = _PI_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse angle {text!r}; use forms like pi/3, 2pi/3, 0")
    sign, num, den = m.groups()
    value = Fraction(int(num) if num else 1, int(den) if den else 1)
    return -value if sign == "-" else value


def format_pi_angle(angle: Angle) -> str:
    if isinstance(angle, Fraction):
        if angle == 0:
            return "0"
        num = "" if abs(angle.numerator) == 1 else str(abs(angle.numerator))
        den = "" if angle.denominator == 1 else f"/{angle.denominator}"
        return f"{'-' if angle < 0 else ''}{num}pi{den}"
    return repr(angle)


def angle_to_radians(angle: Angle) -> float:
    if isinstance(angle, Fraction):
        return float(angle) * math.pi
    return float(angle)


def rational_cos_pi(multiple: Fraction) -> Fraction | None:
    """cos(multiple*pi) when rational (0, ±1/2, ±1); otherwise ``None``."""
    t = Fraction(multiple) % 2
    table = {
        Fraction(0): Fraction(1),
        Fraction(1, 3): Fraction(1, 2),
        Fraction(1, 2): Fraction(0),
        Fraction(2, 3): Fraction(-1, 2),
        Fraction(1): Fraction(-1),
        Fraction(4, 3): Fraction(-1, 2),
        Fraction(3, 2): Fraction(0),
        Fraction(5, 3): Fraction(1, 2),
    }
    return table.get(t)


def exact_sin_squared(multiple: Fraction) -> Fraction | None:
    """sin^2(multiple*pi) as an exact fraction when representable."""
    c = rational_cos_pi(2 * multiple)
    return None if c is None else (1 - c) / 2


def outcome_projector(theta: float, outcome: str, c: Rational | float = HALF) -> Operator:
    """Rank-1 projector onto the rotated basis vector for ``+`` or ``-``."""
    if outcome not in ("+", "-"):
        raise ValueError(f"outcome must be '+' or '-', got {outcome!r}")
    a = float(c) * theta
    v = np.array([math.cos(a), math.sin(a)]) if outcome == "+" else np.array(
        [-math.sin(a), math.cos(a)]
    )
    return Operator(np.outer(v, v), (2,))


@dataclass(frozen=True)
class ProbabilityTable:
    """A finite outcome distribution; probabilities sum to one."""

    entries: Mapping[Outcome, Fraction | float]

    def __post_init__(self) -> None:
        cleaned: dict[Outcome, Fraction | float] = {}
        total: Fraction | float = Fraction(0)
        exact = all(isinstance(v, Fraction) for v in self.entries.values())
        for outcome, p in self.entries.items():
            if not exact:
                p = float(p)
                if p < -1e-12:
                    raise ValueError(f"negative probability {p} for {outcome}")
                p = max(p, 0.0)
            elif p < 0:
                raise ValueError(f"negative probability {p} for {outcome}")
            total = total + p
            cleaned[tuple(outcome)] = p
        if exact:
            if total != 1:
                raise ValueError(f"probabilities sum to {total}, not 1")
        elif abs(float(total) - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {total}, not 1")
        object.__setattr__(self, "entries", cleaned)

    def probability(self, outcome: Sequence[str]) -> Fraction | float:
        return self.entries.get(tuple(outcome), Fraction(0))

    def support(self, tol: float = 1e-15) -> list[Outcome]:
        return sorted(o for o, p in self.entries.items() if float(p) > tol)

    def items(self):
        return self.entries.items()


def joint_distribution(
    ket: Ket,
    angles: Sequence[Angle],
    c: Rational | float = HALF,
) -> ProbabilityTable:
    """Joint outcome distribution when slot ``i`` is read along ``angles[i]``."""
    if any(d != 2 for d in ket.dims):
        raise ShapeError(f"measurement needs spin-1/2 slots, got dims {ket.dims}")
    if len(angles) != ket.n_particles:
        raise ShapeError(
            f"{len(angles)} angles for {ket.n_particles} particles"
        )
    kf = ket.to_float()
    cf = float(c)
    bases = []
    for angle in angles:
        a = cf * angle_to_radians(angle)
        bases.append(((math.cos(a), math.sin(a)), (-math.sin(a), math.cos(a))))
    table: dict[Outcome, float] = {}
    for choice in itertools.product((0, 1), repeat=ket.n_particles):
        amp = 0j
        for label, v in kf.amplitudes.items():
            w = v
            for slot, out in enumerate(choice):
                w *= bases[slot][out][label[slot]]
            amp += w
        outcome = tuple("+" if o == 0 else "-" for o in choice)
        table[outcome] = abs(amp) ** 2
    return ProbabilityTable(table)


BellMode = Literal["half", "full"]


@dataclass(frozen=True)
class BellEvaluation:
    """One evaluation of the angle-gap inequality lhs <= rhs."""

    theta_ij: Angle
    theta_jk: Angle
    theta_ki: Angle
    lhs: Fraction | float
    rhs: Fraction | float
    violated: bool
    mode: BellMode

    @property
    def exact(self) -> bool:
        return isinstance(self.lhs, Fraction) and isinstance(self.rhs, Fraction)

    @property
    def doubled_lhs(self) -> Fraction | float:
        """Both sides scaled by 2, the form quoted as '1/2 >= 3/4'."""
        return 2 * self.lhs

    @property
    def doubled_rhs(self) -> Fraction | float:
        return 2 * self.rhs


def _gap_term(gap: Angle, mode: BellMode) -> Fraction | float | None:
    """1/2 * sin^2(gap/2) (half mode) or 1/2 * sin^2(gap) (full mode)."""
    if isinstance(gap, Fraction):
        s2 = exact_sin_squared(gap / 2 if mode == "half" else gap)
        if s2 is not None:
            return s2 / 2
        gap = float(gap) * math.pi
    angle = gap / 2 if mode == "half" else gap
    return math.sin(angle) ** 2 / 2


def bell_inequality(
    theta_ij: Angle,
    theta_jk: Angle,
    theta_ki: Angle,
    mode: BellMode = "half",
    slack: float = 1e-12,
) -> BellEvaluation:
    """Evaluate the pairwise-gap inequality.

    The left side is the disagreement term for the (i,k) gap and the right
    side the sum for the (i,j) and (j,k) gaps.  Exact fractions are used
    when all three gaps are rational multiples of pi with rational cosine;
    otherwise floats with a fixed slack on the verdict.
    """
    terms = [_gap_term(g, mode) for g in (theta_ki, theta_jk, theta_ij)]
    if all(isinstance(t, Fraction) for t in terms):
        lhs, rhs = terms[0], terms[1] + terms[2]  # type: ignore[operator]
        return BellEvaluation(theta_ij, theta_jk, theta_ki, lhs, rhs, lhs > rhs, mode)
    lhs = float(terms[0])
    rhs = float(terms[1]) + float(terms[2])
    return BellEvaluation(
        theta_ij, theta_jk, theta_ki, lhs, rhs, lhs > rhs + slack, mode
    )


@dataclass(frozen=True)
class GridViolation:
    angles: tuple[Fraction, Fraction, Fraction]
    gaps: tuple[Fraction, Fraction, Fraction]
    evaluation: BellEvaluation


def search_violations(
    denominator: int = 12,
    mode: BellMode = "half",
) -> list[GridViolation]:
    """Scan measurement angle triples on the ``k*pi/denominator`` grid.

    Returns every ordered triple (theta_i < theta_j < theta_k in [0, 2pi))
    whose gap triple violates the inequality.
    """
    steps = [Fraction(k, denominator) for k in range(2 * denominator)]
    found = []
    for ti, tj, tk in itertools.combinations(steps, 3):
        gaps = (abs(tj - ti), abs(tk - tj), abs(tk - ti))
        ev = bell_inequality(*gaps, mode=mode)
        if ev.violated:
            found.append(GridViolation((ti, tj, tk), gaps, ev))
    return found


WignerVariant = Literal["same-state", "singlet-inclusive"]

_SUBSET = (("+", "+", "-"), ("+", "-", "-"))
_SUPERSETS: dict[str, tuple[Outcome, ...]] = {
    "same-state": (
        ("+", "+", "-"),
        ("+", "-", "-"),
        ("-", "+", "-"),
        ("+", "-", "+"),
    ),
    "singlet-inclusive": (
        ("+", "+", "-"),
        ("+", "-", "-"),
        ("-", "-", "-"),
        ("+", "+", "+"),
    ),
}

# The superset splits into two pair events; each is assigned the
# perfect-correlation disagreement (or, for the middle particle of the
# singlet-inclusive variant, agreement) weight 1/2*sin^2 of half the gap.
_PAIR_EVENTS: dict[str, tuple[tuple[str, tuple[Outcome, Outcome]], ...]] = {
    "same-state": (
        ("s2=+,s3=-", (("+", "+", "-"), ("-", "+", "-"))),
        ("s1=+,s2=-", (("+", "-", "-"), ("+", "-", "+"))),
    ),
    "singlet-inclusive": (
        ("s1=+,s2=+", (("+", "+", "-"), ("+", "+", "+"))),
        ("s2=-,s3=-", (("+", "-", "-"), ("-", "-", "-"))),
    ),
}


@dataclass(frozen=True)
class WignerReport:
    """Event sets and probability assignments of the three-angle argument."""

    variant: WignerVariant
    subset: tuple[Outcome, ...]
    superset: tuple[Outcome, ...]
    subset_probability: Fraction | float
    pair_events: dict[str, tuple[tuple[Outcome, Outcome], Fraction | float]]
    consistent: bool

    @property
    def superset_probability(self) -> Fraction | float:
        return sum(p for _, p in self.pair_events.values())


def wigner_argument(
    theta_i: Angle,
    theta_j: Angle,
    theta_k: Angle,
    variant: WignerVariant = "same-state",
    mode: BellMode = "half",
    slack: float = 1e-12,
) -> WignerReport:
    """Run the set-inclusion argument over the 8 outcome triples.

    The subset event (first particle ``+`` along theta_i, third ``-`` along
    theta_k) is contained in the union of two pair events, so its
    probability can be at most their sum; the report states whether the
    perfect-correlation probability assignments respect that bound.
    """

    def gap(a: Angle, b: Angle) -> Angle:
        if isinstance(a, Fraction) and isinstance(b, Fraction):
            return abs(b - a)
        return abs(angle_to_radians(b) - angle_to_radians(a))

    gaps = {
        "ki": gap(theta_i, theta_k),
        "ij": gap(theta_i, theta_j),
        "jk": gap(theta_j, theta_k),
    }
    lhs = _gap_term(gaps["ki"], mode)
    pair_gaps = {"same-state": ("jk", "ij"), "singlet-inclusive": ("ij", "jk")}[variant]
    events = _PAIR_EVENTS[variant]
    pair_probs = {
        events[0][0]: (events[0][1], _gap_term(gaps[pair_gaps[0]], mode)),
        events[1][0]: (events[1][1], _gap_term(gaps[pair_gaps[1]], mode)),
    }
    rhs = sum(p for _, p in pair_probs.values())
    if isinstance(lhs, Fraction) and isinstance(rhs, Fraction):
        consistent = lhs <= rhs
    else:
        consistent = float(lhs) <= float(rhs) + slack
    return WignerReport(
        variant=variant,
        subset=_SUBSET,
        superset=_SUPERSETS[variant],
        subset_probability=lhs,
        pair_events=pair_probs,
        consistent=consistent,
    )
