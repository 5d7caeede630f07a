"""
Django settings for the padj project.

The project has no web surface and no database: everything runs through
management commands (see each app's management/commands package).
Values are read from the environment (or a local .env file) via decouple.
"""

from pathlib import Path
from dotenv import load_dotenv
from decouple import config

load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# SECURITY WARNING: only used by django internals, nothing here is signed
SECRET_KEY = config("SECRET_KEY", default="padj-insecure-local-key")

DEBUG = config("DEBUG", default=False, cast=bool)

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    # Local apps
    "apps.permutations",
    "apps.counting",
    "apps.blockmoves",
    "apps.estimator",
    "apps.core",
]

# No database: every table lives in memory or in the distance cache.
DATABASES = {}

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

LANGUAGE_CODE = "en-us"
TIME_ZONE = "UTC"
USE_I18N = False
USE_TZ = True


# Enumeration / search limits

# exhaustive enumeration of a class (oracle checks)
PADJ_ORACLE_LIMIT = config("PADJ_ORACLE_LIMIT", default=9, cast=int)

# breadth-first distance tables, hard ceiling of 10
PADJ_SEARCH_LIMIT = min(config("PADJ_SEARCH_LIMIT", default=9, cast=int), 10)

# heuristic solver for a single permutation
PADJ_SOLVER_LIMIT = config("PADJ_SOLVER_LIMIT", default=12, cast=int)

PADJ_WORKERS = config("PADJ_WORKERS", default=1, cast=int)

PADJ_CACHE_DIR = Path(config("PADJ_CACHE_DIR", default=str(BASE_DIR / ".padj-cache")))


# Logging

PADJ_LOG_LEVEL = config("PADJ_LOG_LEVEL", default="WARNING").upper()

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "simple": {
            "format": "{levelname} {name}: {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "simple",
        },
    },
    "loggers": {
        "apps": {
            "handlers": ["console"],
            "level": PADJ_LOG_LEVEL,
            "propagate": False,
        },
    },
}
