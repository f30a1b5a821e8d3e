# -*- coding: utf-8 -*-
import numpy as np

from .base_model import BaseProbabilityModel


class DecoheredModel(BaseProbabilityModel):
    """
    Modelo decoherente (información de rendija medida): P_S = Σ_{i∈S} |a_i|^2.
    Exactamente un resultado ocurre siempre, así que P_S es aditiva.
    """
    def intensity(self, amplitudes: np.ndarray) -> np.ndarray:
        return (np.abs(amplitudes) ** 2).sum(axis=0)
