# -*- coding: utf-8 -*-
import logging
from abc import ABC, abstractmethod

import numpy as np


class BaseProbabilityModel(ABC):
    """
    Clase abstracta base para los modelos de probabilidad de subconjuntos.
    Implementa el Patrón Estrategia: cada modelo decide cómo se combinan las
    amplitudes de las rendijas abiertas en una intensidad sobre la pantalla.
    """
    def __init__(self, logger: logging.Logger, epsilon: float = 0.0):
        """
        Inicializa el modelo con su logger y el parámetro de violación
        (solo lo usan los modelos no cuánticos).
        """
        self.logger = logger
        self.epsilon = float(epsilon)

    @abstractmethod
    def intensity(self, amplitudes: np.ndarray) -> np.ndarray:
        """
        Calcula P_S en cada posición del detector.

        :param amplitudes: Array complejo (k, m): fila por rendija abierta, columna por posición.
        :return: Array real (m,) con valores >= 0.
        """
        pass
