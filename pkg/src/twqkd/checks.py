"""Self-contained verification checks behind the ``verify`` CLI command.

Each check compares an independently derived closed form against the
numeric Gram-spectrum machinery at one forward-noise value and reports
pass/fail with the worst residual, or skip when the value sits outside
the relevant validity range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .attacks import (
    PureQubit,
    disturbance,
    disturbance_profile,
    feasible_cross_max,
    interference_attack,
    phase_covariant_attack,
    sphere_samples,
    symmetric_attack,
)
from .bounds import protocol_holevo, six_state_attack_info
from .ensembles import (
    SIXSTATE_BIT0,
    mixture_entropy,
    named_ensemble,
    spectrum_of,
)
from .errors import DomainError
from .linalg import binary_entropy
from .search import sweep_interference

SPECTRUM_TOL = 1e-10
ENTROPY_TOL = 1e-9
DEFAULT_QF_SWEEP = (0.05, 0.1, 0.15, 0.25)


@dataclass(frozen=True)
class CheckResult:
    name: str
    qf: float
    status: str  # "pass" | "fail" | "skip"
    detail: str

    @property
    def failed(self) -> bool:
        return self.status == "fail"


def _result(name: str, qf: float, ok: bool, detail: str) -> CheckResult:
    return CheckResult(name, qf, "pass" if ok else "fail", detail)


def _skip(name: str, qf: float, why: str) -> CheckResult:
    return CheckResult(name, qf, "skip", why)


def _four_state_spectrum_closed(qf: float, cross: float) -> np.ndarray:
    root = math.sqrt((1.0 - 2.0 * qf) ** 2 + 4.0 * cross**2)
    lam_p, lam_m = (1.0 + root) / 4.0, (1.0 - root) / 4.0
    return np.array([lam_p, lam_p, lam_m, lam_m])


def check_four_state_spectrum(qf: float, n_cross: int = 5) -> CheckResult:
    """Spectrum of the two-operation mixture along the interference family
    against its two-eigenvalue closed form (each with multiplicity 2)."""
    name = "four-state-spectrum"
    if qf > 2.0 / 3.0:
        return _skip(name, qf, "symmetric pattern infeasible beyond 2/3")
    x_max = feasible_cross_max(qf) * (1.0 - 1e-9)
    ensemble = named_ensemble("simple")
    worst = 0.0
    for x in np.linspace(0.0, x_max, n_cross):
        spec = spectrum_of(interference_attack(qf, float(x)), ensemble)
        worst = max(worst, float(np.max(np.abs(
            spec - _four_state_spectrum_closed(qf, float(x))
        ))))
    return _result(name, qf, worst < SPECTRUM_TOL,
                   f"max |spectrum - closed form| = {worst:.2e} over "
                   f"{n_cross} cross values in [0, {x_max:.3g}]")


def check_simple_leakage(qf: float) -> CheckResult:
    """Holevo information of the two-operation protocol under the
    symmetric attack equals the binary entropy of the forward noise."""
    name = "simple-protocol-leakage"
    if qf > 2.0 / 3.0:
        return _skip(name, qf, "symmetric attack infeasible beyond 2/3")
    err = abs(protocol_holevo(symmetric_attack(qf), "simple") - binary_entropy(qf))
    return _result(name, qf, err < ENTROPY_TOL, f"|chi - h(qf)| = {err:.2e}")


def check_isotropy(qf: float, n_samples: int = 1000) -> CheckResult:
    """Symmetric-attack disturbance is the same on every pure state."""
    name = "disturbance-isotropy"
    if qf > 2.0 / 3.0:
        return _skip(name, qf, "symmetric attack infeasible beyond 2/3")
    vals = disturbance_profile(symmetric_attack(qf), *sphere_samples(n_samples))
    spread = float(vals.max() - vals.min())
    bias = float(np.max(np.abs(vals - qf)))
    ok = spread < SPECTRUM_TOL and bias < SPECTRUM_TOL
    return _result(name, qf, ok,
                   f"spread = {spread:.2e}, max |value - qf| = {bias:.2e} "
                   f"over {n_samples} directions")


def check_six_state_blocks(qf: float) -> CheckResult:
    """Block spectra of the eight-state mixture and the entropy identities
    they imply for the symmetric attack."""
    name = "six-state-blocks"
    if qf > 2.0 / 3.0:
        return _skip(name, qf, "symmetric attack infeasible beyond 2/3")
    attack = symmetric_attack(qf)
    worst = 0.0
    big = np.array([1.0 - 1.5 * qf, 0.5 * qf, 0.5 * qf, 0.5 * qf])
    for block in ("sixstate-block1", "sixstate-block2"):
        spec = spectrum_of(attack, named_ensemble(block))
        worst = max(worst, float(np.max(np.abs(spec - np.sort(big)[::-1]))))
    pair = np.sort([0.5 * (1 - qf)] * 2 + [0.5 * qf] * 2)[::-1]
    for cond in ("gx", "gy"):
        spec = spectrum_of(attack, named_ensemble(cond))
        worst = max(worst, float(np.max(np.abs(spec - pair))))
    if worst >= SPECTRUM_TOL:
        return _result(name, qf, False, f"spectrum residual {worst:.2e}")

    # entropy identities: the full mixture and all three conditionals
    s_full = mixture_entropy(attack, named_ensemble("sixstate-full"))
    if qf == 0.0:
        s_closed = 1.0
    else:
        s_closed = (2.0 - 1.5 * qf * math.log2(qf)
                    - 0.5 * (2.0 - 3.0 * qf) * math.log2(2.0 - 3.0 * qf))
    e_full = abs(s_full - s_closed)
    e_cond = max(
        abs(mixture_entropy(attack, SIXSTATE_BIT0[w]) - (1.0 + binary_entropy(qf)))
        for w in ("x", "y", "z")
    )
    ok = e_full < ENTROPY_TOL and e_cond < ENTROPY_TOL
    detail = (
        f"spectra ok (residual {worst:.2e}); mixture-entropy residual "
        f"{e_full:.2e}; conditional-entropy residual {e_cond:.2e}; observed "
        f"block multiplicities: {1 - 1.5 * qf:.4g} x1, {0.5 * qf:.4g} x3"
    )
    return _result(name, qf, ok, detail)


def check_six_state_info(qf: float) -> CheckResult:
    """Closed-form six-state information against the numeric Holevo average
    (the library call itself enforces their agreement)."""
    name = "six-state-info"
    if qf > 2.0 / 3.0:
        return _skip(name, qf, "outside the formula's validity range")
    try:
        value = six_state_attack_info(qf)
    except RuntimeError as exc:
        return _result(name, qf, False, str(exc))
    return _result(name, qf, True, f"both routes give {value:.12g}")


def check_equatorial_attack(qf: float, n_states: int = 16) -> CheckResult:
    """The pole/equator-asymmetric attack at weight 2*qf: every equatorial
    state is disturbed by exactly qf, and the information it grants for a
    two-operation encoding is h(2*qf)."""
    name = "equatorial-attack"
    if 2.0 * qf > 1.0:
        return _skip(name, qf, "attack weight 2*qf exceeds 1")
    attack = phase_covariant_attack(2.0 * qf)
    worst = max(
        abs(disturbance(attack, PureQubit(math.pi / 2, 2 * math.pi * j / n_states))
            - qf)
        for j in range(n_states)
    )
    if worst >= SPECTRUM_TOL:
        return _result(name, qf, False,
                       f"equatorial disturbance residual {worst:.2e}")
    info_err = abs(protocol_holevo(attack, "simple") - binary_entropy(2.0 * qf))
    return _result(
        name, qf, info_err < ENTROPY_TOL,
        f"disturbance residual {worst:.2e} on {n_states} states; "
        f"|chi - h(2 qf)| = {info_err:.2e}",
    )


def check_bound_ordering(qf: float) -> CheckResult:
    """The six-state information value never exceeds h(qf)."""
    name = "bound-ordering"
    if qf > 2.0 / 3.0:
        return _skip(name, qf, "outside the six-state validity range")
    try:
        six = six_state_attack_info(qf)
    except (DomainError, RuntimeError) as exc:
        return _result(name, qf, False, str(exc))
    h = binary_entropy(qf)
    margin = h - six
    return _result(name, qf, margin >= -1e-12,
                   f"h(qf) - six-state value = {margin:.6g}")


def check_interference_monotonic(qf: float, n_grid: int = 20) -> CheckResult:
    """Joint-state entropy decreases along the interference family."""
    name = "interference-monotonic"
    if qf > 2.0 / 3.0:
        return _skip(name, qf, "symmetric pattern infeasible beyond 2/3")
    x_max = feasible_cross_max(qf) * (1.0 - 1e-9)
    grid = np.linspace(0.0, x_max, n_grid)
    try:
        values = sweep_interference(qf, grid)
    except RuntimeError as exc:
        return _result(name, qf, False, str(exc))
    strict_ok = all(
        s1 < s0 for (x0, s0), (x1, s1) in zip(values, values[1:]) if x1 > 0
    )
    drop = values[0][1] - values[-1][1]
    return _result(name, qf, strict_ok,
                   f"entropy drops by {drop:.6g} over {n_grid} grid points, "
                   f"strictly where cross > 0")


ALL_CHECKS = (
    check_four_state_spectrum,
    check_simple_leakage,
    check_isotropy,
    check_six_state_blocks,
    check_six_state_info,
    check_equatorial_attack,
    check_bound_ordering,
    check_interference_monotonic,
)


def _guarded(check, qf: float) -> CheckResult:
    # a crashing check is a failed check, not a tool error
    try:
        return check(qf)
    except Exception as exc:  # noqa: BLE001
        name = check.__name__.removeprefix("check_").replace("_", "-")
        return CheckResult(name, qf, "fail", f"raised {type(exc).__name__}: {exc}")


def run_all(qf_values=DEFAULT_QF_SWEEP) -> list[CheckResult]:
    return [_guarded(check, qf) for qf in qf_values for check in ALL_CHECKS]
