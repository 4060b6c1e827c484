"""
Django settings for weyl_torus_service project.

The project has no web surface: it is a Django project so that the
verification pipeline can use management commands, the settings layer,
the cache framework and the template engine.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/4.2/ref/settings/
"""

import os
from pathlib import Path
from dotenv import load_dotenv

# Load .env file
load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


def env_bool(name, default):
    return os.environ.get(name, str(default)).lower() in ("1", "true", "yes")


# SECURITY WARNING: keep the secret key used in production secret!
# Nothing here signs data, a local fallback keeps the CLI usable without .env
SECRET_KEY = os.environ.get(
    "SECRET_KEY",
    "django-insecure-weyl-torus-local-verification-only",
)

DEBUG = env_bool("DEBUG", False)

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    "rest_framework",
    "weyl_torus",
]

TEMPLATES = [
    {
        "BACKEND": "django.template.backends.django.DjangoTemplates",
        "DIRS": [],
        "APP_DIRS": True,
        "OPTIONS": {},
    },
]

# No database: every computation is in memory or in the group cache.
DATABASES = {}

CACHES = {
    "default": {
        "BACKEND": "django.core.cache.backends.locmem.LocMemCache",
    },
    "weyl_group": {
        "BACKEND": "django.core.cache.backends.filebased.FileBasedCache",
        "LOCATION": os.environ.get(
            "WEYL_TORUS_CACHE_DIR", str(BASE_DIR / ".cache" / "weyl_group")
        ),
        "TIMEOUT": None,
    },
}

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

REST_FRAMEWORK = {
    "UNAUTHENTICATED_USER": None,
}

WEYL_TORUS = {
    "SAMPLE_SIZE": int(os.environ.get("WEYL_TORUS_SAMPLE_SIZE", 1000)),
    "JOBS": int(os.environ.get("WEYL_TORUS_JOBS", 1)),
    "SEED": int(os.environ.get("WEYL_TORUS_SEED", 20240601)),
    "STRICT_CHECKS": env_bool("WEYL_TORUS_STRICT_CHECKS", True),
}

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {
            "format": "{asctime} {levelname} {name}: {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "plain",
        },
    },
    "loggers": {
        "weyl_torus": {
            "handlers": ["console"],
            "level": os.environ.get("WEYL_TORUS_LOG_LEVEL", "WARNING"),
            "propagate": False,
        },
    },
}
