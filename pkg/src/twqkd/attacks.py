"""Forward-channel eavesdropping attacks as ancilla-overlap Gram matrices.

An attack is the 4x4 Hermitian PSD matrix g of inner products between the
four ancilla states the eavesdropper is left with after interacting with
one transmitted qubit,

    U |i>|eps> = |0>|eps_i0> + |1>|eps_i1>,        i = 0, 1,

with rows/columns indexed by (i, j) in the fixed order 00, 01, 10, 11 and
the qubit kets taken in the attack's reference basis.  Unitarity of U is
equivalent to

    g[00,00] + g[01,01] = 1,   g[10,10] + g[11,11] = 1,
    g[00,10] + g[01,11] = 0,

and realizability of the overlaps as actual vectors is positive
semidefiniteness.  Every observable quantity handled by this package is a
function of g, so matrices never grow beyond 4x4 here.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DomainError, InfeasibleParameters, NotPSD
from .linalg import PSD_TOL, hermiticity_residual, min_eigenvalue

CONSTRAINT_TOL = 1e-10

# row/column order of the overlap matrix
INDEX_PAIRS = ((0, 0), (0, 1), (1, 0), (1, 1))


@dataclass(frozen=True)
class BlochDirection:
    """A direction on the Bloch sphere, by polar/azimuthal angles.

    ``theta`` is measured from the +z axis, so the +1 eigenstate of the
    associated Pauli operator is cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
    """

    theta: float
    phi: float
    label: str = ""

    def kets(self) -> tuple[np.ndarray, np.ndarray]:
        """Orthonormal eigenstate pair (|0>_k, |1>_k) as length-2 arrays.

        The bit-1 phase is fixed so the z direction gives exactly the
        computational basis, the convention every overlap matrix with a
        z reference is written in.
        """
        c, s = math.cos(self.theta / 2), math.sin(self.theta / 2)
        ph = np.exp(1j * self.phi)
        return (
            np.array([c, ph * s], dtype=complex),
            np.array([-s, ph * c], dtype=complex),
        )

    def eigenstate(self, bit: int) -> "PureQubit":
        """The bit-th eigenstate in the sine-on-|0> angle convention."""
        if bit == 0:
            return PureQubit(math.pi - self.theta, self.phi)
        return PureQubit(self.theta, (self.phi + math.pi) % (2 * math.pi))

    def json_obj(self):
        return self.label if self.label else {"theta": self.theta, "phi": self.phi}

    def __str__(self) -> str:
        return self.label or f"theta={self.theta:.6g},phi={self.phi:.6g}"


Z_DIR = BlochDirection(0.0, 0.0, "z")
X_DIR = BlochDirection(math.pi / 2, 0.0, "x")
Y_DIR = BlochDirection(math.pi / 2, math.pi / 2, "y")
NAMED_DIRECTIONS = {"x": X_DIR, "y": Y_DIR, "z": Z_DIR}


def equatorial_direction(phi: float) -> BlochDirection:
    return BlochDirection(math.pi / 2, phi, f"phi={phi:.6g}")


def direction_from_json(obj) -> BlochDirection:
    if isinstance(obj, str):
        try:
            return NAMED_DIRECTIONS[obj]
        except KeyError:
            raise ConfigError(f"unknown direction label {obj!r}") from None
    return BlochDirection(float(obj["theta"]), float(obj["phi"]))


@dataclass(frozen=True)
class PureQubit:
    """Pure qubit state sin(theta/2)|0> + e^{i phi} cos(theta/2)|1>.

    Note the sine sits on |0>: theta = 0 is |1> and theta = pi is |0>.
    """

    theta: float
    phi: float

    def ket(self) -> np.ndarray:
        s, c = math.sin(self.theta / 2), math.cos(self.theta / 2)
        return np.array([s, np.exp(1j * self.phi) * c], dtype=complex)


@dataclass(frozen=True, eq=False)
class AncillaOverlaps:
    """One forward attack: reference basis plus the 4x4 overlap matrix."""

    g: np.ndarray
    basis: BlochDirection = Z_DIR

    def __post_init__(self):
        g = np.array(self.g, dtype=complex)
        if g.shape != (4, 4):
            raise ConfigError(f"overlap matrix must be 4x4, got {g.shape}")
        g.setflags(write=False)
        object.__setattr__(self, "g", g)

    def to_json(self) -> str:
        entries = [[z.real, z.imag] for z in self.g.ravel()]
        return json.dumps({"basis": self.basis.json_obj(), "entries": entries})

    @classmethod
    def from_json(cls, text: str) -> "AncillaOverlaps":
        obj = json.loads(text)
        entries = obj["entries"]
        if len(entries) != 16:
            raise ConfigError(f"expected 16 entries, got {len(entries)}")
        g = np.array(
            [complex(re, im) for re, im in entries], dtype=complex
        ).reshape(4, 4)
        return cls(g, direction_from_json(obj["basis"]))


@dataclass(frozen=True)
class ValidationReport:
    """Per-constraint residuals for one overlap matrix."""

    hermiticity_residual: float
    min_eigenvalue: float
    normalization_residuals: tuple[float, float]
    orthogonality_residual: float
    hermitian_ok: bool = field(init=False)
    psd_ok: bool = field(init=False)
    normalization_ok: bool = field(init=False)
    orthogonality_ok: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(
            self, "hermitian_ok", self.hermiticity_residual <= CONSTRAINT_TOL
        )
        object.__setattr__(self, "psd_ok", self.min_eigenvalue >= -PSD_TOL)
        object.__setattr__(
            self,
            "normalization_ok",
            max(self.normalization_residuals) <= CONSTRAINT_TOL,
        )
        object.__setattr__(
            self, "orthogonality_ok", self.orthogonality_residual <= CONSTRAINT_TOL
        )

    @property
    def ok(self) -> bool:
        return (
            self.hermitian_ok
            and self.psd_ok
            and self.normalization_ok
            and self.orthogonality_ok
        )


def validate(attack: AncillaOverlaps) -> ValidationReport:
    """Check hermiticity, PSD and the two unitarity constraints."""
    g = attack.g
    herm = hermiticity_residual(g)
    gh = (g + g.conj().T) / 2
    return ValidationReport(
        hermiticity_residual=herm,
        min_eigenvalue=min_eigenvalue(gh),
        normalization_residuals=(
            abs(g[0, 0].real + g[1, 1].real - 1.0),
            abs(g[2, 2].real + g[3, 3].real - 1.0),
        ),
        orthogonality_residual=abs(g[0, 2] + g[1, 3]),
    )


def identity_attack() -> AncillaOverlaps:
    """No interaction: both inputs leave the shared ancilla untouched."""
    g = np.zeros((4, 4), dtype=complex)
    g[0, 0] = g[3, 3] = g[0, 3] = g[3, 0] = 1.0
    return AncillaOverlaps(g)


def _base_pattern(keep: float, flip: float, corner: float) -> np.ndarray:
    g = np.zeros((4, 4), dtype=complex)
    g[0, 0] = g[3, 3] = keep
    g[1, 1] = g[2, 2] = flip
    g[0, 3] = g[3, 0] = corner
    return g


def symmetric_attack(qf: float) -> AncillaOverlaps:
    """Depolarizing-simulating attack with flip probability qf in every basis.

    Flip overlaps equal qf on the diagonal, the only nonzero off-diagonal
    entry is the keep-keep corner 1 - 2 qf, and the matrix stays PSD for
    qf up to 2/3 (enforced by the PSD check, not a hard-coded bound).
    """
    if not 0.0 <= qf <= 1.0:
        raise DomainError(f"flip probability {qf!r} outside [0, 1]")
    attack = AncillaOverlaps(_base_pattern(1.0 - qf, qf, 1.0 - 2.0 * qf))
    if not validate(attack).ok:
        raise DomainError(f"symmetric attack infeasible at qf={qf!r} (PSD fails)")
    return attack


def phase_covariant_attack(d: float) -> AncillaOverlaps:
    """Attack flipping poles with probability d and the equator with d/2.

    Same zero pattern as the symmetric attack but the keep-keep corner is
    1 - d, tied to the diagonal flip weight d.
    """
    if not 0.0 <= d <= 1.0:
        raise DomainError(f"flip weight {d!r} outside [0, 1]")
    attack = AncillaOverlaps(_base_pattern(1.0 - d, d, 1.0 - d))
    if not validate(attack).ok:
        raise DomainError(f"phase-covariant attack infeasible at d={d!r}")
    return attack


def interference_attack(qf: float, cross: float) -> AncillaOverlaps:
    """One-parameter family with overlap ``cross`` between the keep ancillas.

    ``cross`` is the real overlap <eps_00|eps_10> between the no-flip
    ancillas of the two inputs; the 01-11 entry is set to -cross so the
    unitarity constraints keep holding, and all remaining free entries are
    zero.  At cross = 0 this is exactly the symmetric attack.
    """
    if not 0.0 <= qf <= 1.0:
        raise DomainError(f"flip probability {qf!r} outside [0, 1]")
    if cross < 0.0:
        raise DomainError(f"cross overlap {cross!r} must be nonnegative")
    g = _base_pattern(1.0 - qf, qf, 1.0 - 2.0 * qf)
    g[0, 2] = g[2, 0] = cross
    g[1, 3] = g[3, 1] = -cross
    attack = AncillaOverlaps(g)
    if not validate(attack).ok:
        raise InfeasibleParameters(
            f"no physical attack with qf={qf!r}, cross={cross!r}"
        )
    return attack


def feasible_cross_max(qf: float, tol: float = 1e-12) -> float:
    """Largest feasible cross overlap for interference_attack at this qf."""
    if not 0.0 <= qf <= 1.0:
        raise DomainError(f"flip probability {qf!r} outside [0, 1]")

    def eigmin(x: float) -> float:
        g = _base_pattern(1.0 - qf, qf, 1.0 - 2.0 * qf)
        g[0, 2] = g[2, 0] = x
        g[1, 3] = g[3, 1] = -x
        return min_eigenvalue(g)

    if eigmin(0.0) < -tol:
        raise DomainError(f"symmetric attack already infeasible at qf={qf!r}")
    # scan for the last feasible point, then bisect the boundary
    grid = np.linspace(0.0, 1.0, 201)
    feasible = [x for x in grid if eigmin(x) >= -tol]
    lo = max(feasible)
    hi = min(x for x in grid if x > lo) if lo < 1.0 else 1.0
    for _ in range(60):
        mid = (lo + hi) / 2
        if eigmin(mid) >= -tol:
            lo = mid
        else:
            hi = mid
    return lo


def transform_basis(attack: AncillaOverlaps, target: BlochDirection) -> AncillaOverlaps:
    """Re-express an attack relative to another preparation basis.

    Expanding the target eigenstates over the reference ones gives the
    target-basis ancilla states as linear combinations
    eps'_{ij} = sum_{ab} <a_ref|i_tgt><j_tgt|b_ref> eps_{ab}, so the new
    overlap matrix is a congruence of the old one by those coefficients.
    """
    ref = attack.basis.kets()
    tgt = target.kets()
    t = np.empty((4, 4), dtype=complex)
    for r, (i, j) in enumerate(INDEX_PAIRS):
        for c, (a, b) in enumerate(INDEX_PAIRS):
            t[r, c] = np.vdot(ref[a], tgt[i]) * np.vdot(tgt[j], ref[b])
    g_new = t.conj() @ attack.g @ t.T
    g_new = (g_new + g_new.conj().T) / 2
    return AncillaOverlaps(g_new, target)


def _flip_coefficients(thetas, phis) -> np.ndarray:
    """Expansion of the flipped-component ancilla over eps_00..eps_11.

    Broadcasts over equally shaped angle arrays; last axis is the ancilla
    index.
    """
    thetas = np.asarray(thetas, dtype=float)
    phis = np.asarray(phis, dtype=float)
    s, c = np.sin(thetas / 2), np.cos(thetas / 2)
    ph = np.exp(1j * phis)
    return np.stack([s * c, -s * s / ph, c * c * ph, -s * c], axis=-1)


def disturbance(attack: AncillaOverlaps, state: PureQubit) -> float:
    """Probability that the attack flips ``state`` to its orthogonal."""
    v = _flip_coefficients(state.theta, state.phi)
    val = float(np.real(v.conj() @ attack.g @ v))
    return min(max(val, 0.0), 1.0)


def disturbance_profile(attack: AncillaOverlaps, thetas, phis) -> np.ndarray:
    """Vectorized disturbance over arrays of state angles."""
    v = _flip_coefficients(thetas, phis)
    vals = np.real(np.einsum("...p,pq,...q->...", v.conj(), attack.g, v))
    return np.clip(vals, 0.0, 1.0)


def sphere_samples(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic low-discrepancy (theta, phi) sample of the sphere."""
    i = np.arange(n)
    thetas = np.arccos(1.0 - 2.0 * (i + 0.5) / n)
    golden = (1.0 + math.sqrt(5.0)) / 2.0
    phis = (2.0 * math.pi * i * (golden - 1.0)) % (2.0 * math.pi)
    return thetas, phis


def is_depolarizing(attack: AncillaOverlaps, n_samples: int = 256,
                    tol: float = 1e-6) -> bool:
    """True when the disturbance is direction-independent within tol."""
    if n_samples < 1:
        raise ConfigError("n_samples must be at least 1")
    vals = disturbance_profile(attack, *sphere_samples(n_samples))
    return float(vals.max() - vals.min()) < tol


@dataclass(frozen=True, eq=False)
class AttackIsometry:
    """Explicit images of |0>|eps> and |1>|eps> in qubit (x) ancilla space."""

    columns: np.ndarray  # shape (8, 2), qubit index major
    ancillas: np.ndarray  # shape (4, dim): rows eps_00, eps_01, eps_10, eps_11

    def reduced_state(self, ket: np.ndarray) -> np.ndarray:
        """Qubit density matrix after attacking the pure input ``ket``."""
        joint = (self.columns @ np.asarray(ket, dtype=complex)).reshape(2, -1)
        return joint @ joint.conj().T


def realize_isometry(attack: AncillaOverlaps, tol: float = PSD_TOL) -> AttackIsometry:
    """Factor the overlap matrix into explicit ancilla vectors.

    Uses the PSD square root: eigenvalues inside [-tol, 0) are clipped to
    zero, anything lower raises NotPSD.  The Gram matrix of the recovered
    vectors reproduces the input overlaps.
    """
    g = (attack.g + attack.g.conj().T) / 2
    lam, w = np.linalg.eigh(g)
    if lam[0] < -tol:
        raise NotPSD(f"minimum eigenvalue {lam[0]:.3e} below -{tol:.0e}")
    lam = np.clip(lam, 0.0, None)
    # columns of sqrt(Lambda) W^dag have pairwise inner products g[p, q];
    # rows of `ancillas` are those vectors expressed in the eigenbasis
    ancillas = (np.sqrt(lam)[:, None] * w.conj().T).T
    dim = ancillas.shape[1]
    columns = np.zeros((2 * dim, 2), dtype=complex)
    columns[:dim, 0] = ancillas[0]
    columns[dim:, 0] = ancillas[1]
    columns[:dim, 1] = ancillas[2]
    columns[dim:, 1] = ancillas[3]
    return AttackIsometry(columns=columns, ancillas=ancillas)


def random_attack(rng: np.random.Generator) -> AncillaOverlaps:
    """Random valid attack, via a Haar-ish random pair of isometry columns."""
    m = rng.normal(size=(8, 2)) + 1j * rng.normal(size=(8, 2))
    q, _ = np.linalg.qr(m)
    vecs = [q[:4, 0], q[4:, 0], q[:4, 1], q[4:, 1]]
    g = np.array([[np.vdot(a, b) for b in vecs] for a in vecs])
    return AncillaOverlaps(g)
