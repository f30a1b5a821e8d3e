# -*- coding: utf-8 -*-
import numpy as np

from .base_model import BaseProbabilityModel


class BornModel(BaseProbabilityModel):
    """
    Regla de Born coherente: P_S = |Σ_{i∈S} a_i|^2.
    Genera interferencia de segundo orden y anula todos los I_K con K >= 3.
    """
    def intensity(self, amplitudes: np.ndarray) -> np.ndarray:
        return np.abs(amplitudes.sum(axis=0)) ** 2
