# -*- coding: utf-8 -*-
import os
import sys

# Asegura que los paquetes 'core', 'algebra', 'physics' y 'models' sean importables
# (la reflexión de modelos los busca por nombre)
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

# La configuración de logging la instala run() antes de despachar el subcomando
from core.command_manager import run

if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
