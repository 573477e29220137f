import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

# Determine BASE_DIR from an environment variable, or default to one level up from this file
BASE_DIR = Path(os.getenv("BASE_DIR", Path(__file__).resolve().parent.parent))

# Use environment variables for file names, with defaults provided
CONFIG_FILENAME = os.getenv("CONFIG_FILENAME", "codehand_config.json")
CONFIG_PATH = BASE_DIR / CONFIG_FILENAME

TOOL_NAME = "codehand"
TOOL_VERSION = "0.6.0"

# Presentation only; never affects outputs
NO_COLOR_ENV = "CODEHAND_NO_COLOR"

DEFAULT_OUT_DIR = Path("codehand_out")
MANIFEST_FILENAME = "manifest.json"
OPERATIONS_LOG_FILENAME = "operations_log.txt"
