# -*- coding: utf-8 -*-
import importlib
import inspect
import logging
import pkgutil
from functools import lru_cache
from typing import Type

from models.base_model import BaseProbabilityModel

logger = logging.getLogger("ClassDiscovery")


class ModelDiscovery:
    """Descubre por reflexión las implementaciones de modelos de probabilidad."""

    @staticmethod
    def _discover_classes(package_name: str, base_class: Type) -> list[Type]:
        """Método genérico para descubrir subclases de una clase base en un paquete."""
        discovered_classes = []
        try:
            package = importlib.import_module(package_name)
            for _, name, is_pkg in pkgutil.walk_packages(package.__path__):
                if is_pkg:
                    continue
                try:
                    module = importlib.import_module(f"{package_name}.{name}")
                except ImportError as e:
                    logger.error(f"Error importando {name}: {e}")
                    continue
                for item_name, item_obj in inspect.getmembers(module, inspect.isclass):
                    if (issubclass(item_obj, base_class) and
                            item_obj is not base_class and
                            not inspect.isabstract(item_obj) and
                            item_obj.__module__.startswith(package_name)):
                        discovered_classes.append(item_obj)
                        logger.debug(f"Descubierta clase {base_class.__name__} en {package_name}: {item_name}")
        except Exception as e:
            logger.error(f"Error fatal discovery: {e}")
        # Orden estable, independiente del sistema de ficheros
        return sorted(set(discovered_classes), key=lambda cls: cls.__name__)

    @staticmethod
    @lru_cache(maxsize=None)
    def discover_models(package_name: str = 'models') -> dict[str, type[BaseProbabilityModel]]:
        """Mapea cada modelo por su nombre clave ('born', 'decohered', 'nonquantum')."""
        models_map = {}
        for cls in ModelDiscovery._discover_classes(package_name, BaseProbabilityModel):
            clean_name = cls.__name__.replace('Model', '').lower()
            models_map[clean_name] = cls
        return models_map
