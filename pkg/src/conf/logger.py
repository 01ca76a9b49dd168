"""
Logging configuration for the lab.
"""

import logging

from src.conf.config import settings


logger = logging.getLogger("contagion_lab")
logger.setLevel(logging.DEBUG)

formatter = logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")

console_handler = logging.StreamHandler()
console_handler.setLevel(settings.log_level.upper())
console_handler.setFormatter(formatter)

logger.addHandler(console_handler)

file_handler = logging.FileHandler(settings.log_file, delay=True)
file_handler.setLevel(logging.ERROR)
file_handler.setFormatter(formatter)

logger.addHandler(file_handler)
