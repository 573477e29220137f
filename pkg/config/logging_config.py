# logging_config.py

import logging.config
from typing import Optional

from config.config_models import CodehandSettings

LOGGER_NAMES = (
    "InkLogger",
    "GrammarLogger",
    "PipelineLogger",
    "NoisyChannelLogger",
    "MetricsLogger",
    "CorpusLogger",
    "ExperimentLogger",
    "CodehandCLI",
    "UnifiedConfigManager",
)


def setup_logging(settings: CodehandSettings, level_override: Optional[str] = None):
    level = (level_override or settings.system_config.log_level).upper()
    handlers = ['console']
    handler_config = {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'standard',
            'level': level,
            # stdout carries reports; diagnostics go to stderr
            'stream': 'ext://sys.stderr',
        },
    }
    if settings.system_config.log_file:
        handlers.append('file')
        handler_config['file'] = {
            'class': 'logging.FileHandler',
            'formatter': 'standard',
            'level': level,
            'filename': settings.system_config.log_file,
            'mode': 'a',
            'encoding': 'utf-8',
        }

    logging_config = {
        'version': 1,
        'disable_existing_loggers': False,
        'formatters': {
            'standard': {
                'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
            },
            'json': {
                'format': '{"time": "%(asctime)s", "name": "%(name)s", "level": "%(levelname)s", "message": "%(message)s"}',
                'class': 'logging.Formatter',
            },
        },
        'handlers': handler_config,
        'loggers': {
            name: {'handlers': handlers, 'level': level, 'propagate': False}
            for name in LOGGER_NAMES
        },
    }

    logging.config.dictConfig(logging_config)
