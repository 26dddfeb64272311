import environ
import os

ROOT_DIR = environ.Path(__file__) - 2  # (/a/b/myfile.py - 2 = /a)

# Local environment
# -----------------
env = environ.Env()

if os.path.isfile(".env"):
    env.read_env(".env")

# APP CONFIGURATION
# ------------------------------------------------------------------------------
DJANGO_APPS = (
    "django.contrib.contenttypes",
)
THIRD_PARTY_APPS = ()
LOCAL_APPS = (
    "hullprice",
)

INSTALLED_APPS = DJANGO_APPS + THIRD_PARTY_APPS + LOCAL_APPS

# DEBUG
# ------------------------------------------------------------------------------
# See: https://docs.djangoproject.com/en/dev/ref/settings/#debug
DEBUG = env.bool("DJANGO_DEBUG", False)

# DATABASE CONFIGURATION
# ------------------------------------------------------------------------------
# The engine keeps everything in memory, scenarios come from JSON documents.
DATABASES = {}

# GENERAL CONFIGURATION
# ------------------------------------------------------------------------------
TIME_ZONE = "UTC"

# See: https://docs.djangoproject.com/en/dev/ref/settings/#language-code
LANGUAGE_CODE = "en-us"

# See: https://docs.djangoproject.com/en/dev/ref/settings/#use-i18n
USE_I18N = False

# See: https://docs.djangoproject.com/en/dev/ref/settings/#use-tz
USE_TZ = True

# TEMPLATE CONFIGURATION
# ------------------------------------------------------------------------------
# See: https://docs.djangoproject.com/en/dev/ref/settings/#templates
TEMPLATES = [
    {
        "BACKEND": "django.template.backends.django.DjangoTemplates",
        "DIRS": [],
        "OPTIONS": {
            "debug": DEBUG,
            # Reports are plain text
            "autoescape": False,
            "loaders": [
                "django.template.loaders.app_directories.Loader",
            ],
        },
    },
]

# Hull pricing
# ------------------------------------------------------------------------------
# Refuse to enumerate more commitment patterns than this
HULLPRICE_PATTERN_LIMIT = env.int("HULLPRICE_PATTERN_LIMIT", default=2 ** 20)
# Default cap sweep resolution, MWh, as a decimal string
HULLPRICE_SWEEP_RESOLUTION = env("HULLPRICE_SWEEP_RESOLUTION", default="1")
# Maximum number of cap vectors visited by one sweep
HULLPRICE_SWEEP_LIMIT = env.int("HULLPRICE_SWEEP_LIMIT", default=200000)
# Worker processes for cap sweeps, 1 keeps the sweep in-process
HULLPRICE_SWEEP_PROCESSES = env.int("HULLPRICE_SWEEP_PROCESSES", default=1)
# Rounding policy used when a scenario document does not name one, "cent" or "exact"
HULLPRICE_ROUNDING = env("HULLPRICE_ROUNDING", default="cent")
# Tolerance for floating point (quadratic) data
HULLPRICE_FLOAT_TOLERANCE = env.float("HULLPRICE_FLOAT_TOLERANCE", default=1e-9)
# Maximum number of grid points the oracle evaluates
HULLPRICE_ORACLE_GRID_LIMIT = env.int("HULLPRICE_ORACLE_GRID_LIMIT", default=10 ** 8)

# LOGGING CONFIGURATION
# ------------------------------------------------------------------------------
# See: https://docs.djangoproject.com/en/dev/ref/settings/#logging
LOGGING = {
    "version": 1,
    "disable_existing_loggers": True,
    "formatters": {
        "verbose": {
            "format": "%(levelname)s %(asctime)s %(module)s "
                      "%(process)d %(thread)d %(message)s"
        },
    },
    "handlers": {
        "console": {
            "level": "DEBUG",
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
        "file": {
            "filename": env("HULLPRICE_LOGFILE", default="/tmp/hullprice.log"),
            "level": "DEBUG",
            "class": "logging.handlers.RotatingFileHandler",
            "formatter": "verbose",
            "maxBytes": 10485760,  # 10mb
            "backupCount": 10,
            "delay": True,
        },
    },
    "loggers": {
        "hullprice": {
            "level": env("HULLPRICE_LOGLEVEL", default="INFO"),
            "handlers": ["console", "file"],
            "propagate": False,
        },
    }
}
