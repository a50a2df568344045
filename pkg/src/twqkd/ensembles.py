"""Gram matrices and Holevo quantities of sender-eavesdropper ensembles.

The joint states accessible to the eavesdropper in the backward channel are
mixtures of pure components (sigma_w (x) 1) U |b>|eps>, labelled by the
preparation bit b and the encoding Pauli w.  Their pairwise inner products
follow from the attack's ancilla overlaps alone, so spectra and entropies
of up to 8-state mixtures reduce to matrices of the ensemble size instead
of 8x8 density operators.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .attacks import AncillaOverlaps, realize_isometry
from .errors import ConfigError
from .linalg import hermitian_eigenvalues, von_neumann_entropy

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

WEIGHT_TOL = 1e-12
# cross-overlap magnitude below which ensemble blocks count as orthogonal
BLOCK_TOL = 1e-10


@dataclass(frozen=True)
class JointStateLabel:
    """Symbolic pure component: preparation bit, encoding Pauli, weight."""

    prep_bit: int
    pauli: str
    weight: float

    def __post_init__(self):
        if self.prep_bit not in (0, 1):
            raise ConfigError(f"prep_bit must be 0 or 1, got {self.prep_bit!r}")
        if self.pauli not in PAULI:
            raise ConfigError(f"unknown Pauli label {self.pauli!r}")
        if self.weight < 0:
            raise ConfigError(f"negative weight {self.weight!r}")


@dataclass(frozen=True)
class Ensemble:
    """Ordered, weight-normalized collection of joint-state labels."""

    labels: tuple[JointStateLabel, ...]

    def __post_init__(self):
        if not self.labels:
            raise ConfigError("ensemble must contain at least one state")
        total = sum(lab.weight for lab in self.labels)
        if abs(total - 1.0) > WEIGHT_TOL:
            raise ConfigError(f"ensemble weights sum to {total!r}, not 1")

    def __len__(self) -> int:
        return len(self.labels)

    def scaled(self, factor: float) -> tuple[JointStateLabel, ...]:
        return tuple(
            JointStateLabel(lab.prep_bit, lab.pauli, lab.weight * factor)
            for lab in self.labels
        )


def make_ensemble(*items: tuple[str, int, float]) -> Ensemble:
    """Build an ensemble from (pauli, prep_bit, weight) triples."""
    return Ensemble(tuple(JointStateLabel(b, w, p) for w, b, p in items))


def joint_overlap(attack: AncillaOverlaps, s1: JointStateLabel,
                  s2: JointStateLabel) -> complex:
    """Inner product of two pure components, weights ignored.

    <eps|<b1| U^dag (sigma_w1 sigma_w2 (x) 1) U |b2>|eps> contracts the
    2x2 Pauli product against the ancilla overlaps:
    sum_{c,c'} (sigma_w1 sigma_w2)[c, c'] g[(b1, c), (b2, c')].
    """
    m = PAULI[s1.pauli] @ PAULI[s2.pauli]
    g = attack.g
    b1, b2 = 2 * s1.prep_bit, 2 * s2.prep_bit
    return complex(
        m[0, 0] * g[b1, b2]
        + m[0, 1] * g[b1, b2 + 1]
        + m[1, 0] * g[b1 + 1, b2]
        + m[1, 1] * g[b1 + 1, b2 + 1]
    )


def gram_matrix(attack: AncillaOverlaps, ensemble: Ensemble) -> np.ndarray:
    """Weighted Gram matrix sqrt(w_i w_j) <phi_i|phi_j>; Hermitian, trace 1."""
    labels = ensemble.labels
    n = len(labels)
    root_w = np.sqrt([lab.weight for lab in labels])
    g = np.empty((n, n), dtype=complex)
    for i in range(n):
        g[i, i] = root_w[i] ** 2 * joint_overlap(attack, labels[i], labels[i]).real
        for j in range(i + 1, n):
            val = root_w[i] * root_w[j] * joint_overlap(attack, labels[i], labels[j])
            g[i, j] = val
            g[j, i] = val.conjugate()
    return g


def _orthogonal_blocks(m: np.ndarray, tol: float = BLOCK_TOL) -> list[list[int]]:
    """Connected index groups under |m[i, j]| >= tol adjacency."""
    n = m.shape[0]
    unseen = set(range(n))
    blocks = []
    while unseen:
        stack = [unseen.pop()]
        block = []
        while stack:
            i = stack.pop()
            block.append(i)
            linked = {j for j in unseen if abs(m[i, j]) >= tol}
            unseen -= linked
            stack.extend(linked)
        blocks.append(sorted(block))
    return blocks


def spectrum_of(attack: AncillaOverlaps, ensemble: Ensemble) -> np.ndarray:
    """Eigenvalues of the ensemble's mixture, descending.

    Mutually orthogonal sub-ensembles (zero cross-overlaps) are detected
    and diagonalized separately; their spectra concatenate to the full one
    because each block already carries its own weight share.
    """
    g = gram_matrix(attack, ensemble)
    blocks = _orthogonal_blocks(g)
    if len(blocks) == 1:
        return hermitian_eigenvalues(g)
    parts = [hermitian_eigenvalues(g[np.ix_(b, b)]) for b in blocks]
    return np.sort(np.concatenate(parts))[::-1]


def mixture_entropy(attack: AncillaOverlaps, ensemble: Ensemble) -> float:
    return von_neumann_entropy(spectrum_of(attack, ensemble))


def holevo(attack: AncillaOverlaps,
           conditionals: list[tuple[float, Ensemble]]) -> float:
    """Holevo quantity of a weighted alphabet of conditional mixtures.

    S(sum_b p_b rho_b) - sum_b p_b S(rho_b), with every entropy evaluated
    through the Gram spectrum.  Tiny negative round-off is clipped to 0.
    """
    probs = [p for p, _ in conditionals]
    if abs(sum(probs) - 1.0) > WEIGHT_TOL:
        raise ConfigError(f"conditional probabilities sum to {sum(probs)!r}")
    mixture = Ensemble(
        tuple(
            lab
            for p, ens in conditionals
            for lab in ens.scaled(p)
        )
    )
    chi = mixture_entropy(attack, mixture) - sum(
        p * mixture_entropy(attack, ens) for p, ens in conditionals
    )
    if -1e-9 <= chi < 0.0:
        return 0.0
    return chi


def explicit_density(attack: AncillaOverlaps, ensemble: Ensemble) -> np.ndarray:
    """Materialized 8x8 density operator; oracle twin of the Gram path."""
    iso = realize_isometry(attack)
    dim = iso.ancillas.shape[1]
    rho = np.zeros((2 * dim, 2 * dim), dtype=complex)
    for lab in ensemble.labels:
        vec = np.kron(PAULI[lab.pauli], np.eye(dim)) @ iso.columns[:, lab.prep_bit]
        rho += lab.weight * np.outer(vec, vec.conj())
    return rho


def _pair(w: str, weight: float) -> tuple:
    return ((w, 0, weight), (w, 1, weight))


# Conditional alphabets, keyed by protocol structure:
#  - two-operation encoding {1, Z} conditions directly on the operation;
#  - four-operation encodings condition on the flip indicator, giving
#    keep = {1, sigma_w} and flip = the complementary Pauli pair per
#    preparation direction w;
#  - modified disclosure reduces each direction to a {1 vs single-Pauli}
#    alphabet.
SIMPLE_BIT0 = make_ensemble(*_pair("I", 0.5))
SIMPLE_BIT1 = make_ensemble(*_pair("Z", 0.5))

KEEP_FLIP = {"z": ("Z", "X", "Y"), "x": ("X", "Y", "Z"), "y": ("Y", "X", "Z")}

SIXSTATE_BIT0 = {
    w: make_ensemble(*_pair("I", 0.25), *_pair(KEEP_FLIP[w][0], 0.25))
    for w in ("x", "y", "z")
}
SIXSTATE_BIT1 = {
    w: make_ensemble(*_pair(KEEP_FLIP[w][1], 0.25), *_pair(KEEP_FLIP[w][2], 0.25))
    for w in ("x", "y", "z")
}

MODIFIED_BIT1 = {
    "x": make_ensemble(*_pair("Z", 0.5)),  # preparation along x: {1} vs {Z}
    "z": make_ensemble(*_pair("X", 0.5)),  # preparation along z: {1} vs {X}
}

NAMED_ENSEMBLES: dict[str, Ensemble] = {
    # four-state mixture of the two-operation protocol (also the z-direction
    # keep-conditional of the four-operation ones)
    "simple": make_ensemble(*_pair("I", 0.25), *_pair("Z", 0.25)),
    "gx": SIXSTATE_BIT0["x"],
    "gy": SIXSTATE_BIT0["y"],
    "gz": SIXSTATE_BIT0["z"],
    # the eight-state mixture and its two orthogonal four-state blocks
    "sixstate-block1": make_ensemble(
        ("I", 0, 0.25), ("X", 1, 0.25), ("Y", 1, 0.25), ("Z", 0, 0.25)
    ),
    "sixstate-block2": make_ensemble(
        ("I", 1, 0.25), ("X", 0, 0.25), ("Y", 0, 0.25), ("Z", 1, 0.25)
    ),
    "sixstate-full": make_ensemble(
        *_pair("I", 0.125), *_pair("X", 0.125),
        *_pair("Y", 0.125), *_pair("Z", 0.125)
    ),
}


def named_ensemble(name: str) -> Ensemble:
    try:
        return NAMED_ENSEMBLES[name]
    except KeyError:
        raise ConfigError(
            f"unknown ensemble {name!r}; choose from {sorted(NAMED_ENSEMBLES)}"
        ) from None
