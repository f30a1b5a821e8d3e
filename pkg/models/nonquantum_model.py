# -*- coding: utf-8 -*-
import numpy as np

from .base_model import BaseProbabilityModel


class NonQuantumModel(BaseProbabilityModel):
    """
    Violador deliberado de la jerarquía: P_S = |A_S|^2 (1 + ε|A_S|), con A_S la
    amplitud sumada. Es suave, positivo para ε >= 0 y coincide con Born en ε = 0.
    """
    def intensity(self, amplitudes: np.ndarray) -> np.ndarray:
        modulus = np.abs(amplitudes.sum(axis=0))
        values = modulus ** 2 * (1.0 + self.epsilon * modulus)
        if np.any(values < 0):
            # Con ε < 0 y amplitudes grandes la intensidad puede ser negativa
            self.logger.warning(f"NonQuantum: intensidad negativa con epsilon={self.epsilon}; se recorta a 0")
            values = np.clip(values, 0.0, None)
        return values
