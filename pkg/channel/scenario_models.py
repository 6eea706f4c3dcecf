"""
Instantaneous error-probability formulas of the demodulate-and-forward relay
with C-MRC at the destination, and of node 1 in the network-coded system.

Shared by the quadrature oracle and the simulator, so every function works on
floats and on numpy arrays of link SNRs (linear scale).
"""

import logging
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from sampling.special_functions import gaussian_q, gaussian_q_inv, gaussian_q_inv_array
from utils.errors import DomainError

logger = logging.getLogger(__name__)

Snr = Union[float, np.ndarray]

# Below this the two-hop error probability has no usable Q^{-1}
SATURATION_FLOOR = 1e-300


@dataclass(frozen=True)
class LinkSnrs:
    gamma_sr: Snr
    gamma_rd: Snr
    gamma_sd: Snr

    def __post_init__(self):
        for name in ("gamma_sr", "gamma_rd", "gamma_sd"):
            if np.any(np.asarray(getattr(self, name)) < 0.0):
                raise DomainError(f"{name} must be nonnegative")


@dataclass(frozen=True)
class NetworkSnrs:
    gamma_1: Snr
    gamma_2: Snr
    gamma_4: Snr
    gamma_eq4: Snr
    p_e4: Snr

    def __post_init__(self):
        for name in ("gamma_1", "gamma_2", "gamma_4", "gamma_eq4"):
            if np.any(np.asarray(getattr(self, name)) < 0.0):
                raise DomainError(f"{name} must be nonnegative")
        p = np.asarray(self.p_e4)
        if np.any(p < 0.0) or np.any(p > 0.5):
            raise DomainError("p_e4 must lie in [0, 1/2]")


def _q_sqrt(value) -> Snr:
    return gaussian_q(np.sqrt(value))


def hop_error_probability(gamma_sr: Snr, gamma_rd: Snr) -> Snr:
    """(1 - P_SR) P_RD + (1 - P_RD) P_SR with P_ij = Q(sqrt(2 gamma_ij))."""
    p_sr = _q_sqrt(2.0 * np.asarray(gamma_sr, dtype=float))
    p_rd = _q_sqrt(2.0 * np.asarray(gamma_rd, dtype=float))
    return (1.0 - p_sr) * p_rd + (1.0 - p_rd) * p_sr


def gamma_eq(gamma_sr: Snr, gamma_rd: Snr) -> Snr:
    """
    Equivalent single-hop SNR of the relayed path: the SNR whose BPSK error
    rate Q(sqrt(2 gamma)) equals the two-hop error rate.

    When that error rate underflows (both hops near perfect) the result
    saturates at min(gamma_sr, gamma_rd).
    """
    sr = np.asarray(gamma_sr, dtype=float)
    rd = np.asarray(gamma_rd, dtype=float)
    if np.any(sr < 0.0) or np.any(rd < 0.0):
        raise DomainError("link SNRs must be nonnegative")

    combined = np.asarray(hop_error_probability(sr, rd), dtype=float)
    saturated = combined < SATURATION_FLOOR

    if np.ndim(combined) == 0:
        if saturated:
            logger.debug(f"gamma_eq saturated at ({float(sr)!r}, {float(rd)!r})")
            return float(min(sr, rd))
        p = float(combined)
        if p >= 0.5:
            return 0.0
        root = gaussian_q_inv(p)
        return 0.5 * root * root

    out = np.minimum(sr, rd).astype(float)
    live = ~saturated & (combined < 0.5)
    root = gaussian_q_inv_array(combined[live])
    out[live] = 0.5 * root * root
    out[~saturated & (combined >= 0.5)] = 0.0
    return out


def _safe_ratio(numerator: np.ndarray, denominator: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = numerator / denominator
    return np.where(denominator > 0.0, ratio, 0.0)


def _mrc_arguments(gamma_direct, gamma_relayed, gamma_second_hop):
    """Q arguments of the C-MRC decision for a correct and a wrong relay decision."""
    noise = gamma_direct + _safe_ratio(gamma_relayed * gamma_relayed, gamma_second_hop)
    scale = np.sqrt(2.0) / np.sqrt(noise, where=noise > 0.0, out=np.ones_like(noise))
    correct = np.where(noise > 0.0, (gamma_direct + gamma_relayed) * scale, 0.0)
    wrong = np.where(noise > 0.0, (gamma_direct - gamma_relayed) * scale, 0.0)
    return correct, wrong


def _as_probability(value: np.ndarray) -> Snr:
    # cancellation can leave tiny negatives
    clipped = np.clip(value, 0.0, 1.0)
    return float(clipped) if np.ndim(clipped) == 0 else clipped


def instantaneous_ber_relay(links: LinkSnrs, gamma_equivalent: Optional[Snr] = None) -> Snr:
    """
    Conditional end-to-end BER of the C-MRC detector for given link SNRs.

    ``gamma_equivalent`` may be passed when already computed for the
    (gamma_sr, gamma_rd) pair. All-zero SNRs give 1/2.
    """
    sr = np.asarray(links.gamma_sr, dtype=float)
    rd = np.asarray(links.gamma_rd, dtype=float)
    sd = np.asarray(links.gamma_sd, dtype=float)
    geq = np.asarray(gamma_eq(sr, rd) if gamma_equivalent is None else gamma_equivalent, dtype=float)
    sr, rd, sd, geq = np.broadcast_arrays(sr, rd, sd, geq)

    p_sr = np.asarray(_q_sqrt(2.0 * sr))
    correct, wrong = _mrc_arguments(sd, geq, rd)
    ber = (1.0 - p_sr) * gaussian_q(correct) + p_sr * gaussian_q(wrong)
    return _as_probability(ber)


def instantaneous_ber_network(snrs: NetworkSnrs) -> Snr:
    """Approximate conditional BER of node 1's bit in the network-coded system."""
    g1 = np.asarray(snrs.gamma_1, dtype=float)
    g2 = np.asarray(snrs.gamma_2, dtype=float)
    g4 = np.asarray(snrs.gamma_4, dtype=float)
    geq4 = np.asarray(snrs.gamma_eq4, dtype=float)
    p_e4 = np.asarray(snrs.p_e4, dtype=float)
    g1, g2, g4, geq4, p_e4 = np.broadcast_arrays(g1, g2, g4, geq4, p_e4)

    correct, wrong = _mrc_arguments(g1, geq4, g4)
    ber = ((1.0 - p_e4) * gaussian_q(correct)
           + p_e4 * gaussian_q(wrong)
           + _q_sqrt(2.0 * (g1 + g2)))
    return _as_probability(ber)
