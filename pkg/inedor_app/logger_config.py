"""Módulo para configuração do logger."""

import configparser
import logging
import sys

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
_HANDLER_MARK = "_inedor_handler"


def _install(logger, handler, level, formatter):
    setattr(handler, _HANDLER_MARK, True)
    handler.setLevel(level)
    handler.setFormatter(formatter)
    logger.addHandler(handler)


def setup_logger(config: configparser.ConfigParser):
    """
    Configures the root logger from the `[Logging]` section of `config`.

    It sets up:
    - A console handler on stderr, so stdout carries only requested data.
    - A file handler when `log_file` is non-empty. If the file cannot be opened the
      error is logged on stderr and logging continues console-only.
    - The logging level (`log_level`) for both handlers.

    Calling it again replaces the handlers it installed before instead of stacking new ones.

    Args:
        config (configparser.ConfigParser): May lack the `[Logging]` section;
            fallbacks are an empty `log_file` and 'INFO'.
    """
    log_file_path = config.get('Logging', 'log_file', fallback='').strip()
    log_level_str = config.get('Logging', 'log_level', fallback='INFO').upper()

    numeric_log_level = getattr(logging, log_level_str, None)
    if not isinstance(numeric_log_level, int):
        numeric_log_level = logging.INFO

    logger = logging.getLogger()
    logger.setLevel(numeric_log_level)
    for handler in list(logger.handlers):
        if getattr(handler, _HANDLER_MARK, False):
            logger.removeHandler(handler)
            handler.close()

    formatter = logging.Formatter(LOG_FORMAT)
    _install(logger, logging.StreamHandler(sys.stderr), numeric_log_level, formatter)
    if log_file_path:
        try:
            file_handler = logging.FileHandler(log_file_path, encoding="utf-8")
        except OSError as e:
            logging.getLogger(__name__).error(f"Could not open log file '{log_file_path}': {e}. Logging to stderr only.")
        else:
            _install(logger, file_handler, numeric_log_level, formatter)

    logging.getLogger(__name__).debug("Logger configured: file output to %s, level %s", log_file_path or "(none)", log_level_str)
