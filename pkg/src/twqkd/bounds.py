"""Protocol definitions, eavesdropping-information bounds and rate curves.

Four two-way protocol families are described as data: a simple
non-deterministic scheme encoding with {1, Z} on x/z preparations, the
deterministic four-operation scheme on x/z (with and without the extra
disclosure step that simplifies its analysis), its six-state variant with
the y preparation added, and the generalized two-operation scheme with a
continuum of equatorial preparations.  The closed-form information bounds
carry an explicit kind (exact / upper / lower) so callers can refuse to
treat a lower bound as a safe key-rate input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import brentq

from .attacks import (
    AncillaOverlaps,
    BlochDirection,
    X_DIR,
    Y_DIR,
    Z_DIR,
    equatorial_direction,
    symmetric_attack,
)
from .ensembles import (
    MODIFIED_BIT1,
    PAULI,
    SIMPLE_BIT0,
    SIMPLE_BIT1,
    SIXSTATE_BIT0,
    SIXSTATE_BIT1,
    holevo,
)
from .errors import ConfigError, DomainError
from .linalg import binary_entropy

FLIP_AMP_TOL = 1e-9


@dataclass(frozen=True)
class ProtocolSpec:
    """Everything needed to run and analyze one protocol."""

    name: str
    prep_directions: tuple[BlochDirection, ...]
    encoding_ops: tuple[str, ...]
    p_encode: float = 0.5
    p_control: float = 0.5
    disclosure: str = "none"
    # "flip-indicator": the bit is defined by whether the state flipped;
    # "op-label": the bit is the operation identity (1 -> 0, Z -> 1)
    decoding: str = "flip-indicator"

    def __post_init__(self):
        if abs(self.p_encode + self.p_control - 1.0) > 1e-12:
            raise ConfigError("mode probabilities must sum to 1")
        if self.decoding not in ("flip-indicator", "op-label"):
            raise ConfigError(f"unknown decoding rule {self.decoding!r}")
        if self.disclosure not in ("none", "modified-lm05-prime"):
            raise ConfigError(f"unknown disclosure policy {self.disclosure!r}")

    def op_flips(self, op: str, direction: BlochDirection) -> bool:
        """Whether ``op`` maps the direction's eigenstates to each other."""
        k0, k1 = direction.kets()
        sigma = PAULI[op]
        keep = abs(np.vdot(k0, sigma @ k0)) ** 2
        flip = abs(np.vdot(k1, sigma @ k0)) ** 2
        if flip > 1.0 - FLIP_AMP_TOL:
            return True
        if keep > 1.0 - FLIP_AMP_TOL:
            return False
        raise ConfigError(
            f"op {op} neither preserves nor flips the {direction} eigenstates"
        )

    def encoded_bit(self, op: str, direction: BlochDirection) -> int:
        if self.decoding == "flip-indicator":
            return int(self.op_flips(op, direction))
        return {"I": 0, "Z": 1}[op]

    def decodable(self, direction: BlochDirection) -> bool:
        """True when the flip indicator reveals the encoded bit."""
        if self.decoding == "flip-indicator":
            return True
        flips_of_bit = {0: set(), 1: set()}
        for op in self.encoding_ops:
            flips_of_bit[self.encoded_bit(op, direction)].add(
                self.op_flips(op, direction)
            )
        return not (flips_of_bit[0] & flips_of_bit[1])

    @property
    def deterministic(self) -> bool:
        return all(self.decodable(d) for d in self.prep_directions)


def builtin_protocols(equatorial_points: int = 16) -> list[ProtocolSpec]:
    """The four protocol families, with uniform choice probabilities.

    The equatorial preparation continuum of the generalized protocol is
    represented by a finite uniform phase grid (bounds never depend on the
    grid; only the simulator needs concrete states).
    """
    xz = (X_DIR, Z_DIR)
    four_ops = ("I", "X", "Y", "Z")
    equator = tuple(
        equatorial_direction(2 * math.pi * j / equatorial_points)
        for j in range(equatorial_points)
    )
    return [
        ProtocolSpec("simple", xz, ("I", "Z"), decoding="op-label"),
        ProtocolSpec("lm05-prime", xz, four_ops),
        ProtocolSpec(
            "lm05-prime-modified", xz, four_ops, disclosure="modified-lm05-prime"
        ),
        ProtocolSpec("twqkd-six-state", (X_DIR, Y_DIR, Z_DIR), four_ops),
        ProtocolSpec("lm05-generalized", equator, ("I", "Z"), decoding="op-label"),
    ]


def get_protocol(name: str, equatorial_points: int = 16) -> ProtocolSpec:
    for p in builtin_protocols(equatorial_points):
        if p.name == name:
            return p
    raise ConfigError(
        f"unknown protocol {name!r}; choose from "
        f"{[p.name for p in builtin_protocols()]}"
    )


@dataclass(frozen=True)
class NoiseModel:
    """Forward noise plus how the overall error rate derives from it."""

    qf: float
    mode: str = "equal-forward"
    qb: float = 0.0

    def __post_init__(self):
        if self.mode not in ("equal-forward", "independent-backward"):
            raise ConfigError(f"unknown noise mode {self.mode!r}")
        if not 0.0 <= self.qf <= 1.0 or not 0.0 <= self.qb <= 1.0:
            raise ConfigError("noise probabilities must lie in [0, 1]")
        if self.mode == "equal-forward" and self.qb != 0.0:
            raise ConfigError("equal-forward mode fixes qb = 0")

    @property
    def q(self) -> float:
        """Overall error rate: qf for equal-forward, else the XOR of legs."""
        return self.qf * (1.0 - self.qb) + self.qb * (1.0 - self.qf)

    def with_qf(self, qf: float) -> "NoiseModel":
        return replace(self, qf=qf)


# validity ranges of the closed forms, per protocol
BOUND_DOMAINS = {
    "simple": 0.5,
    "lm05-prime": 0.5,
    "lm05-prime-modified": 0.5,
    "twqkd-six-state": 2.0 / 3.0,
    "lm05-generalized": 0.25,
}


def _six_state_closed(qf: float) -> float:
    if qf == 0.0:
        return 0.0
    return qf + (1.0 - qf) * binary_entropy((2.0 - 3.0 * qf) / (2.0 * (1.0 - qf)))


def eve_info_bound(protocol: ProtocolSpec | str, qf: float) -> tuple[float, str]:
    """Closed-form eavesdropping information and its bound kind.

    Kinds: "exact" where the stated attack attains the value, "upper"
    for the four-operation scheme without disclosure, "lower" for the
    six-state variant (its tightness is unproven, so downstream key-rate
    code must not treat it as safe).
    """
    name = protocol if isinstance(protocol, str) else protocol.name
    if name not in BOUND_DOMAINS:
        raise ConfigError(f"no information bound for protocol {name!r}")
    limit = BOUND_DOMAINS[name]
    if not 0.0 <= qf <= limit:
        raise DomainError(
            f"{name} bound is only valid for qf in [0, {limit:.4g}], got {qf!r}"
        )
    if name == "simple":
        return binary_entropy(qf), "exact"
    if name == "lm05-prime":
        return binary_entropy(qf), "upper"
    if name == "lm05-prime-modified":
        return binary_entropy(qf), "exact"
    if name == "twqkd-six-state":
        return _six_state_closed(qf), "lower"
    return binary_entropy(2.0 * qf), "exact"


def secret_fraction(q: float, ie: float) -> float:
    """Asymptotic secret bits per sifted bit, 1 - h(q) - ie (not clipped)."""
    return 1.0 - binary_entropy(q) - ie


def six_state_attack_info(qf: float) -> float:
    """Average Holevo information of the symmetric attack, both routes.

    The Gram-spectrum numeric path and the closed form are evaluated and
    must agree to 1e-9; the closed form is returned.
    """
    if not 0.0 <= qf <= 2.0 / 3.0:
        raise DomainError(f"six-state attack info needs qf in [0, 2/3], got {qf!r}")
    closed = _six_state_closed(qf)
    attack = symmetric_attack(qf)
    numeric = np.mean(
        [
            holevo(attack, [(0.5, SIXSTATE_BIT0[w]), (0.5, SIXSTATE_BIT1[w])])
            for w in ("x", "y", "z")
        ]
    )
    if abs(numeric - closed) > 1e-9:
        raise RuntimeError(
            f"six-state info mismatch at qf={qf}: numeric {numeric!r} "
            f"vs closed form {closed!r}"
        )
    return closed


def protocol_holevo(attack: AncillaOverlaps, protocol: ProtocolSpec | str) -> float:
    """Eavesdropper's Holevo information for one attack, averaged over
    preparation directions, via the Gram-spectrum route."""
    name = protocol if isinstance(protocol, str) else protocol.name
    if name == "simple":
        return holevo(attack, [(0.5, SIMPLE_BIT0), (0.5, SIMPLE_BIT1)])
    if name == "lm05-prime-modified":
        return 0.5 * sum(
            holevo(attack, [(0.5, SIMPLE_BIT0), (0.5, MODIFIED_BIT1[w])])
            for w in ("z", "x")
        )
    if name == "lm05-prime":
        return 0.5 * sum(
            holevo(attack, [(0.5, SIXSTATE_BIT0[w]), (0.5, SIXSTATE_BIT1[w])])
            for w in ("z", "x")
        )
    if name == "twqkd-six-state":
        return sum(
            holevo(attack, [(0.5, SIXSTATE_BIT0[w]), (0.5, SIXSTATE_BIT1[w])])
            for w in ("x", "y", "z")
        ) / 3.0
    raise ConfigError(f"no ensemble decomposition for protocol {name!r}")


@dataclass(frozen=True)
class BoundCurvePoint:
    """One grid point of the bound-comparison curves; None marks a value
    outside its formula's validity range."""

    qf: float
    i_ab: float
    ie_simple: float | None
    ie_lm05p_upper: float | None
    ie_six_lower: float | None
    ie_lm05gen: float | None
    r_simple: float | None = field(init=False)
    r_lm05p: float | None = field(init=False)
    r_six: float | None = field(init=False)
    r_lm05gen: float | None = field(init=False)
    q: float = 0.0

    def __post_init__(self):
        for r_name, ie in (
            ("r_simple", self.ie_simple),
            ("r_lm05p", self.ie_lm05p_upper),
            ("r_six", self.ie_six_lower),
            ("r_lm05gen", self.ie_lm05gen),
        ):
            val = None if ie is None else secret_fraction(self.q, ie)
            object.__setattr__(self, r_name, val)


CURVE_COLUMNS = (
    "qf", "i_ab", "ie_simple", "ie_lm05p_upper", "ie_six_lower",
    "ie_lm05gen", "r_simple", "r_lm05p", "r_six", "r_lm05gen",
)

_CURVE_PROTOCOLS = ("simple", "lm05-prime", "twqkd-six-state", "lm05-generalized")


def bound_curve(qf_grid, noise: NoiseModel) -> list[BoundCurvePoint]:
    """Evaluate all four bounds plus the mutual information on a qf grid.

    Grid points outside a bound's validity range get None for that bound
    instead of aborting the whole curve.
    """
    points = []
    for qf in qf_grid:
        q = noise.with_qf(float(qf)).q
        ies = []
        for name in _CURVE_PROTOCOLS:
            try:
                ies.append(eve_info_bound(name, float(qf))[0])
            except DomainError:
                ies.append(None)
        points.append(
            BoundCurvePoint(
                qf=float(qf),
                i_ab=1.0 - binary_entropy(q),
                ie_simple=ies[0],
                ie_lm05p_upper=ies[1],
                ie_six_lower=ies[2],
                ie_lm05gen=ies[3],
                q=q,
            )
        )
    return points


def _fmt(value: float | None) -> str:
    return "" if value is None else format(value, ".12g")


def curve_csv(points: list[BoundCurvePoint]) -> str:
    """Serialize curve points; floats carry 12 significant digits."""
    lines = [",".join(CURVE_COLUMNS)]
    for p in points:
        lines.append(",".join(_fmt(getattr(p, col)) for col in CURVE_COLUMNS))
    return "\n".join(lines) + "\n"


def rate_zero_crossings(noise: NoiseModel) -> dict[str, float | None]:
    """Forward-noise threshold where each secret fraction reaches zero.

    Solved by bisection over the bound's validity range; None when the
    fraction does not change sign there.
    """

    def r_of(name: str):
        def r(qf: float) -> float:
            ie, _ = eve_info_bound(name, qf)
            return secret_fraction(noise.with_qf(qf).q, ie)

        return r

    out: dict[str, float | None] = {}
    for name in _CURVE_PROTOCOLS:
        r = r_of(name)
        lo, hi = 0.0, BOUND_DOMAINS[name]
        if r(lo) <= 0.0 or r(hi) >= 0.0:
            out[name] = None
        else:
            out[name] = float(brentq(r, lo, hi, xtol=1e-14, rtol=1e-15))
    return out
