# -*- coding: utf-8 -*-
import asyncio
import logging
import time
from functools import wraps
from typing import Any, Callable, Sequence

from core import settings

# Configuración del logger para el Broker
logger = logging.getLogger("JobBroker")


# --- DECORADOR DE PROGRAMACIÓN FUNCIONAL ---
def log_execution_time(job_name: str):
    """
    Decorador que mide y loguea el tiempo de ejecución de una función síncrona.
    """
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            start_time = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                elapsed = (time.perf_counter() - start_time) * 1000  # en milisegundos
                logger.debug(f"FUNCTIONAL: {job_name} ejecutado en {elapsed:.2f}ms")
        return wrapper
    return decorator


class JobBroker:
    """
    Reparte trabajos independientes (verificaciones por n, puntos de rejilla)
    entre hilos mediante asyncio y devuelve los resultados en el orden de envío,
    sea cual sea el orden en que terminen.
    """
    def __init__(self, max_workers: int | None = None):
        self.max_workers = max_workers or settings.JOB_WORKERS
        if self.max_workers < 1:
            raise ValueError(f"max_workers debe ser >= 1, recibido {self.max_workers}")
        self.completed: list[str] = []
        logger.info(f"Job Broker inicializado con {self.max_workers} hilos.")

    async def _run_one(self, semaphore: asyncio.Semaphore, name: str, job: Callable[[], Any]) -> Any:
        async with semaphore:
            logger.debug(f"PUBLICADO trabajo {name}")
            try:
                result = await asyncio.to_thread(log_execution_time(name)(job))
            except Exception as e:
                logger.error(f"Trabajo {name} fallido: {e}")
                raise
            self.completed.append(name)
            logger.debug(f"RECIBIDO resultado de {name}")
            return result

    async def run_jobs(self, jobs: Sequence[tuple[str, Callable[[], Any]]]) -> list[Any]:
        """
        Ejecuta los trabajos (nombre, callable sin argumentos) de forma concurrente.

        :param jobs: Lista de pares (nombre, función).
        :return: Resultados en el mismo orden que 'jobs'.
        """
        semaphore = asyncio.Semaphore(self.max_workers)
        tasks = [self._run_one(semaphore, name, job) for name, job in jobs]
        results = await asyncio.gather(*tasks)
        logger.info(f"{len(results)} trabajos completados.")
        return list(results)

    def run(self, jobs: Sequence[tuple[str, Callable[[], Any]]]) -> list[Any]:
        """Envoltorio síncrono para la CLI."""
        return asyncio.run(self.run_jobs(jobs))
