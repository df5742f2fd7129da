"""
Runtime configuration, read from the environment (and a local .env file).
"""

import os

from dotenv import load_dotenv

load_dotenv()

DEFAULT_PROFILE = os.getenv("RDMPF_PROFILE", "l5-n7")
MERKLE_HEIGHT = int(os.getenv("RDMPF_MERKLE_HEIGHT", "10"))
# Keygen and every decode of a secret key rebuild 2^h leaves
MAX_MERKLE_HEIGHT = int(os.getenv("RDMPF_MAX_MERKLE_HEIGHT", "12"))
LOG_LEVEL = os.getenv("RDMPF_LOG_LEVEL", "WARNING").upper()
KAT_COUNT = int(os.getenv("RDMPF_KAT_COUNT", "10"))

API_ORIGINS = [
    origin.strip()
    for origin in os.getenv(
        "RDMPF_API_ORIGINS",
        "http://localhost:3000,http://localhost:5173"
    ).split(",")
    if origin.strip()
]

LOG_FORMAT = "[%(levelname)s] %(message)s"
