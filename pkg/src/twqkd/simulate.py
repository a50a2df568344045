"""Qubit-level Monte-Carlo simulation of the two-way protocol loop.

Each round: the receiver prepares an eigenstate of a randomly chosen
preparation direction, the forward attack acts through its explicit
isometry, and the sender either measures in a random preparation basis
(control mode) or applies a random encoding operation after which the
qubit crosses the backward channel and is measured in the preparation
basis.  Only control rounds where the measurement basis matches the
preparation estimate the forward noise; a disclosed fraction of the valid
encoding rounds estimates the overall error rate and the remainder is the
sifted key.

The eavesdropper's information is never sampled here (it is a Holevo
quantity of her stored ancillas, not a measurement outcome); the simulator
only realizes the channel her attack induces.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .attacks import AncillaOverlaps, realize_isometry, validate
from .bounds import NoiseModel, ProtocolSpec, eve_info_bound, get_protocol, secret_fraction
from .ensembles import PAULI
from .errors import ConfigError, InsufficientStatistics, LowerBoundRefused

# uniform draws consumed per round, in fixed positions: preparation
# direction, preparation bit, mode, in-mode choice, measurement outcome,
# backward flip, error-estimation disclosure
DRAWS_PER_ROUND = 7


@dataclass(frozen=True)
class SimulationConfig:
    protocol: ProtocolSpec
    attack: AncillaOverlaps
    noise: NoiseModel
    n_rounds: int
    seed: int
    em_sample_fraction: float = 0.1  # share of valid encoding rounds disclosed

    def __post_init__(self):
        if self.n_rounds < 1:
            raise ConfigError("n_rounds must be at least 1")
        if not 0.0 <= self.em_sample_fraction <= 1.0:
            raise ConfigError("em_sample_fraction must lie in [0, 1]")
        if not validate(self.attack).ok:
            raise ConfigError("attack fails physicality validation")

    def echo(self) -> dict:
        return {
            "protocol": self.protocol.name,
            "attack": json.loads(self.attack.to_json()),
            "noise": {"qf": self.noise.qf, "mode": self.noise.mode,
                      "qb": self.noise.qb},
            "n_rounds": self.n_rounds,
            "seed": self.seed,
            "em_sample_fraction": self.em_sample_fraction,
            "p_encode": self.protocol.p_encode,
            "p_control": self.protocol.p_control,
        }


@dataclass(frozen=True)
class DirectionStats:
    """Matched control-mode statistics for one preparation direction."""

    direction: str
    n: int
    flips: int
    rate: float
    stderr: float


@dataclass(frozen=True)
class SimulationReport:
    per_direction: tuple[DirectionStats, ...]
    cm_unmatched: int
    em_n: int
    em_errors: int
    q_hat: float
    q_stderr: float
    sifted: int
    discarded: int
    config_echo: dict = field(repr=False)

    @property
    def pooled_qf(self) -> tuple[int, int]:
        """(flips, samples) pooled over all matched control directions."""
        return (
            sum(d.flips for d in self.per_direction),
            sum(d.n for d in self.per_direction),
        )

    def total_rounds(self) -> int:
        _, cm_n = self.pooled_qf
        return cm_n + self.cm_unmatched + self.em_n + self.sifted + self.discarded

    def to_json(self) -> str:
        return json.dumps(
            {
                "config_echo": self.config_echo,
                "per_direction": [
                    {
                        "dir": d.direction,
                        "n": d.n,
                        "flips": d.flips,
                        "rate": d.rate,
                        "stderr": d.stderr,
                    }
                    for d in self.per_direction
                ],
                "cm_unmatched": self.cm_unmatched,
                "em": {
                    "n": self.em_n,
                    "errors": self.em_errors,
                    "q_hat": self.q_hat,
                    "stderr": self.q_stderr,
                },
                "sifted": self.sifted,
                "discarded": self.discarded,
            },
            indent=2,
        )


def _binomial_stderr(k: int, n: int) -> float:
    if n == 0:
        return 0.0
    p = k / n
    return float(np.sqrt(p * (1.0 - p) / n))


def run(cfg: SimulationConfig) -> SimulationReport:
    """Simulate ``n_rounds`` protocol rounds, bit-reproducibly from the seed.

    All randomness comes from one (n_rounds, 7) uniform block drawn up
    front, so identical configs give identical reports and the per-round
    draw budget is fixed regardless of branching.
    """
    protocol, attack, noise = cfg.protocol, cfg.attack, cfg.noise
    dirs = protocol.prep_directions
    ops = protocol.encoding_ops
    n_dirs, n_ops = len(dirs), len(ops)
    if n_dirs == 0 or n_ops == 0:
        raise ConfigError("protocol needs preparation directions and encodings")

    iso = realize_isometry(attack)
    # measurement statistics only need the attacked qubit's reduced state
    cm_flip_prob = np.zeros((n_dirs, 2))
    em_flip_prob = np.zeros((n_dirs, 2, n_ops))
    encoded_bit = np.zeros((n_dirs, n_ops), dtype=int)
    dir_decodable = np.zeros(n_dirs, dtype=bool)
    for di, direction in enumerate(dirs):
        kets = direction.kets()
        dir_decodable[di] = protocol.decodable(direction)
        for b in (0, 1):
            rho = iso.reduced_state(kets[b])
            flipped = kets[1 - b]
            cm_flip_prob[di, b] = np.real(np.vdot(flipped, rho @ flipped))
            for oi, op in enumerate(ops):
                sigma = PAULI[op]
                rho_enc = sigma @ rho @ sigma.conj().T
                em_flip_prob[di, b, oi] = np.real(
                    np.vdot(flipped, rho_enc @ flipped)
                )
                encoded_bit[di, oi] = protocol.encoded_bit(op, direction)

    rng = np.random.default_rng(cfg.seed)
    u = rng.random((cfg.n_rounds, DRAWS_PER_ROUND))

    prep_dir = (u[:, 0] * n_dirs).astype(np.intp)
    prep_bit = (u[:, 1] >= 0.5).astype(np.intp)
    is_em = u[:, 2] < protocol.p_encode

    # control mode: measurement in a random preparation basis, matched
    # rounds estimate the forward noise
    cm = ~is_em
    cm_meas_dir = (u[:, 3] * n_dirs).astype(np.intp)
    matched = cm & (cm_meas_dir == prep_dir)
    cm_flip = matched & (u[:, 4] < cm_flip_prob[prep_dir, prep_bit])

    per_direction = []
    for di, direction in enumerate(dirs):
        sel = matched & (prep_dir == di)
        n = int(sel.sum())
        flips = int(cm_flip[sel].sum())
        per_direction.append(
            DirectionStats(
                direction=str(direction),
                n=n,
                flips=flips,
                rate=flips / n if n else 0.0,
                stderr=_binomial_stderr(flips, n),
            )
        )
    cm_unmatched = int((cm & ~matched).sum())

    # encoding mode: apply a random operation, cross the backward channel,
    # measure in the preparation basis and decode the flip indicator
    em_op = (u[:, 3] * n_ops).astype(np.intp)
    forward_flip = u[:, 4] < em_flip_prob[prep_dir, prep_bit, em_op]
    backward_flip = u[:, 5] < noise.qb
    decoded = forward_flip ^ backward_flip
    encoded = encoded_bit[prep_dir, em_op]

    valid_em = is_em & dir_decodable[prep_dir]
    discarded = int((is_em & ~dir_decodable[prep_dir]).sum())
    disclosed = valid_em & (u[:, 6] < cfg.em_sample_fraction)
    em_n = int(disclosed.sum())
    em_errors = int((decoded[disclosed] != encoded[disclosed]).sum())
    sifted = int((valid_em & ~disclosed).sum())

    return SimulationReport(
        per_direction=tuple(per_direction),
        cm_unmatched=cm_unmatched,
        em_n=em_n,
        em_errors=em_errors,
        q_hat=em_errors / em_n if em_n else 0.0,
        q_stderr=_binomial_stderr(em_errors, em_n),
        sifted=sifted,
        discarded=discarded,
        config_echo=cfg.echo(),
    )


def estimate_key_rate(
    report: SimulationReport,
    protocol: ProtocolSpec | None = None,
    allow_lower_bound: bool = False,
) -> float:
    """Secret fraction from a report's empirical noise estimates.

    Pools the matched control-mode counts into one forward-noise estimate,
    feeds it to the protocol's information bound and combines with the
    empirical overall error rate.  A protocol whose bound is only a lower
    bound on the eavesdropper's information is refused unless
    ``allow_lower_bound`` is set, because the resulting rate could
    overstate the key's security.
    """
    if protocol is None:
        protocol = get_protocol(report.config_echo["protocol"])
    flips, n_cm = report.pooled_qf
    if n_cm == 0:
        raise InsufficientStatistics("no matched control-mode samples")
    if report.em_n == 0:
        raise InsufficientStatistics("no disclosed encoding-mode samples")
    qf_hat = flips / n_cm
    ie, kind = eve_info_bound(protocol, qf_hat)
    if kind == "lower" and not allow_lower_bound:
        raise LowerBoundRefused(
            f"{protocol.name}: information bound is a lower bound; pass "
            "allow_lower_bound=True to accept an optimistic rate"
        )
    return secret_fraction(report.q_hat, ie)
