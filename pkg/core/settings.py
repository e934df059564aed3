import os
from pathlib import Path

import dj_database_url
from dotenv import load_dotenv


load_dotenv()


BASE_DIR = Path(__file__).resolve().parent.parent


SECRET_KEY = os.getenv('DJANGO_SECRET_KEY', 'harmconv-insecure-development-key')
DEBUG = os.getenv('DEBUG', 'False').lower() in ('true', '1', 'yes')


ALLOWED_HOSTS = [host for host in os.getenv('ALLOWED_HOSTS', 'localhost,127.0.0.1').split(',') if host]


INSTALLED_APPS = [
'django.contrib.admin',
'django.contrib.auth',
'django.contrib.contenttypes',
'django.contrib.sessions',
'django.contrib.messages',
'django.contrib.staticfiles',


'rest_framework',


'harmconv',
]

MIDDLEWARE = [
    'django.middleware.security.SecurityMiddleware',
    'django.contrib.sessions.middleware.SessionMiddleware',
    'django.middleware.common.CommonMiddleware',
    'django.middleware.csrf.CsrfViewMiddleware',
    'django.contrib.auth.middleware.AuthenticationMiddleware',
    'django.contrib.messages.middleware.MessageMiddleware',
    'django.middleware.clickjacking.XFrameOptionsMiddleware',
]


ROOT_URLCONF = 'core.urls'


TEMPLATES = [
{
'BACKEND': 'django.template.backends.django.DjangoTemplates',
'DIRS': [BASE_DIR / 'templates'],
'APP_DIRS': True,
'OPTIONS': {
'context_processors': [
'django.template.context_processors.request',
'django.contrib.auth.context_processors.auth',
'django.contrib.messages.context_processors.messages',
],
},
},
]


# Database Configuration - SQLite unless DATABASE_URL is set
DATABASES = {
    'default': dj_database_url.config(
        default=f"sqlite:///{BASE_DIR / 'db.sqlite3'}",
        conn_max_age=600,
    )
}


# ============================================
# harmconv numerical defaults
# ============================================

def _env_number(key, default):
    """HARMCONV_<KEY> from the environment, cast to the type of the default."""
    raw = os.getenv(f'HARMCONV_{key}')
    if raw is None or raw == '':
        return default
    return type(default)(raw)


HARMCONV = {
    'DEFAULT_ORDER': _env_number('DEFAULT_ORDER', 64),
    'R_MAX': _env_number('R_MAX', 0.995),
    'GRID_R': _env_number('GRID_R', 201),
    'GRID_T': _env_number('GRID_T', 201),
    'BOUNDARY_SAMPLES': _env_number('BOUNDARY_SAMPLES', 4096),
    'CONVEXITY_RADIUS': _env_number('CONVEXITY_RADIUS', 0.99),
    'CONVEXITY_SAMPLES': _env_number('CONVEXITY_SAMPLES', 4096),
    'HALFPLANE_GRID': _env_number('HALFPLANE_GRID', 101),
    'WITNESS_GRID': _env_number('WITNESS_GRID', 400),
    'SCAN_GRID': _env_number('SCAN_GRID', 200),
    'SCAN_R_EVAL': _env_number('SCAN_R_EVAL', 0.995),
    'PLOT': {
        'RINGS': _env_number('PLOT_RINGS', 10),
        'RAYS': _env_number('PLOT_RAYS', 16),
        'R_MAX': _env_number('PLOT_R_MAX', 0.99),
        'SAMPLES_PER_CURVE': _env_number('PLOT_SAMPLES_PER_CURVE', 1000),
        'CLIP_RADIUS': _env_number('PLOT_CLIP_RADIUS', 8.0),
        'WIDTH_PX': _env_number('PLOT_WIDTH_PX', 800),
    },
}


STATIC_URL = 'static/'
STATIC_ROOT = BASE_DIR / 'staticfiles'


DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


REST_FRAMEWORK = {
'DEFAULT_RENDERER_CLASSES': ['rest_framework.renderers.JSONRenderer'],
'DEFAULT_PAGINATION_CLASS': 'rest_framework.pagination.PageNumberPagination',
'PAGE_SIZE': 50,
}


# Console logging always; the file handler is skipped when
# HARMCONV_LOG_TO_FILE=false (read-only checkouts, CI)
LOG_LEVEL = os.getenv('HARMCONV_LOG_LEVEL', 'INFO')
LOG_TO_FILE = os.getenv('HARMCONV_LOG_TO_FILE', 'true').lower() in ('true', '1', 'yes')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'harmconv': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
        },
    },
}

if LOG_TO_FILE:
    LOG_DIR = Path(os.getenv('HARMCONV_LOG_DIR', BASE_DIR / 'logs'))
    try:
        LOG_DIR.mkdir(parents=True, exist_ok=True)
    except OSError:
        LOG_TO_FILE = False
    else:
        LOGGING['handlers']['file'] = {
            'class': 'logging.FileHandler',
            'filename': LOG_DIR / 'harmconv.log',
            'formatter': 'verbose',
        }
        LOGGING['loggers']['harmconv']['handlers'].append('file')
