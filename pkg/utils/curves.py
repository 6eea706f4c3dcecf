import csv
import math
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, TextIO

import numpy as np

CSV_HEADER = ["scenario", "method", "snr_db", "ber", "std_error"]


def db_to_linear(snr_db):
    """s = 10^(dB/10); the only place dB enters the numerics."""
    value = np.power(10.0, np.asarray(snr_db, dtype=float) / 10.0)
    return float(value) if np.ndim(snr_db) == 0 else value


def linear_to_db(snr_linear):
    value = 10.0 * np.log10(np.asarray(snr_linear, dtype=float))
    return float(value) if np.ndim(snr_linear) == 0 else value


@dataclass(frozen=True)
class CurvePoint:
    snr_db: float
    ber: float
    std_error: Optional[float] = None


@dataclass
class BerCurve:
    """Per-SNR results of one method for one scenario."""
    scenario: str
    method: str
    points: List[CurvePoint] = field(default_factory=list)

    def __post_init__(self):
        snrs = [p.snr_db for p in self.points]
        if snrs != sorted(snrs):
            raise ValueError(f"{self.scenario}/{self.method}: points must be sorted by snr_db")
        for p in self.points:
            if not (0.0 <= p.ber <= 1.0) or math.isnan(p.ber):
                raise ValueError(f"{self.scenario}/{self.method}: ber {p.ber!r} at {p.snr_db} dB is not a probability")

    @property
    def snr_db(self) -> np.ndarray:
        return np.array([p.snr_db for p in self.points], dtype=float)

    @property
    def ber(self) -> np.ndarray:
        return np.array([p.ber for p in self.points], dtype=float)


def _sci(value: Optional[float]) -> str:
    return "" if value is None else f"{value:.10e}"


def write_curves_csv(curves: Iterable[BerCurve], stream: TextIO) -> int:
    """Write one row per (snr_db, method); rows ordered by SNR, then by the order of ``curves``."""
    curves = list(curves)
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)

    snr_values = sorted({p.snr_db for c in curves for p in c.points})
    rows = 0
    for snr in snr_values:
        for curve in curves:
            for p in curve.points:
                if p.snr_db == snr:
                    writer.writerow([curve.scenario, curve.method, _sci(p.snr_db), _sci(p.ber), _sci(p.std_error)])
                    rows += 1
    return rows
