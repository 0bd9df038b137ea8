"""
This module provides the settings of the certifier and a few preconfigured setting sheets.
Default values are class attributes of CertifierSettings; library functions use them as keyword defaults.
@author: orbital-measure-tools developers
"""
from typing import Optional

from orbital_tools.enumerations import Mode
from orbital_tools.utils import _DO_NOT_CHANGE


class CertifierSettings:
    """
    Knobs of the rank certifier:
        - trials: number of Haar samples per certification (Dense as soon as one reaches full rank)
        - tolerance: singular values above tolerance * sigma_max count toward the rank
        - mode: float SVD rank or exact rational rank (RealD only)
        - seed: root seed of all random streams (None -> fresh entropy)
        - workers: size of the process pool used for pair sweeps (1 -> run in process)
        - cluster_tolerance: distance below which two projection coordinates count as equal
        - exact_denominator: largest denominator of the random rational Cayley parameters
        - cond_limit: largest condition number accepted by the Cartan projection
    """
    trials: int = 8
    tolerance: float = 1e-9
    mode: Mode = Mode.Float
    seed: Optional[int] = None
    workers: int = 1
    cluster_tolerance: float = 1e-7
    exact_denominator: int = 64
    cond_limit: float = 1e12

    def __init__(self, **kwargs):
        self.set(**kwargs)

    def set(self, trials: int = _DO_NOT_CHANGE,
            tolerance: float = _DO_NOT_CHANGE,
            mode: Mode = _DO_NOT_CHANGE,
            seed: Optional[int] = _DO_NOT_CHANGE,
            workers: int = _DO_NOT_CHANGE,
            cluster_tolerance: float = _DO_NOT_CHANGE,
            exact_denominator: int = _DO_NOT_CHANGE,
            cond_limit: float = _DO_NOT_CHANGE
            ) -> 'CertifierSettings':
        """Convenience method to set several settings together."""
        if trials is not _DO_NOT_CHANGE:
            if trials < 1:
                raise ValueError(f"trials must be >= 1 (got {trials}).")
            self.trials = trials
        if tolerance is not _DO_NOT_CHANGE:
            if not 0.0 < tolerance < 1.0:
                raise ValueError(f"tolerance must lie in (0, 1) (got {tolerance}).")
            self.tolerance = tolerance
        if mode is not _DO_NOT_CHANGE:
            self.mode = Mode(mode)
        if seed is not _DO_NOT_CHANGE:
            if seed is not None and seed < 0:
                raise ValueError(f"seed must be nonnegative (got {seed}).")
            self.seed = seed
        if workers is not _DO_NOT_CHANGE:
            if workers < 1:
                raise ValueError(f"workers must be >= 1 (got {workers}).")
            self.workers = workers
        if cluster_tolerance is not _DO_NOT_CHANGE:
            if cluster_tolerance <= 0.0:
                raise ValueError(f"cluster_tolerance must be positive (got {cluster_tolerance}).")
            self.cluster_tolerance = cluster_tolerance
        if exact_denominator is not _DO_NOT_CHANGE:
            if exact_denominator < 1:
                raise ValueError(f"exact_denominator must be >= 1 (got {exact_denominator}).")
            self.exact_denominator = exact_denominator
        if cond_limit is not _DO_NOT_CHANGE:
            self.cond_limit = cond_limit
        return self

    def __repr__(self):
        return (f"CertifierSettings(trials={self.trials}, tolerance={self.tolerance}, mode={self.mode.value}, "
                f"seed={self.seed}, workers={self.workers})")


def settings_default() -> CertifierSettings:
    return CertifierSettings()


def settings_thorough() -> CertifierSettings:
    result = settings_default()
    result.trials = 32
    return result


def settings_exact() -> CertifierSettings:
    result = settings_default()
    result.mode = Mode.ExactRational
    return result


def settings_parallel(workers: int) -> CertifierSettings:
    return settings_default().set(workers=workers)
