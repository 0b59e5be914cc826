"""
src/infrastructure/__init__.py
Expõe as principais classes e funções da infraestrutura
"""

from .logger import setup_logging, get_logger
from .csv_io import load_table, read_header, write_json, write_table
from .config_loader import RunConfig, parse_config

__all__ = [
    'setup_logging',
    'get_logger',
    'load_table',
    'read_header',
    'write_json',
    'write_table',
    'RunConfig',
    'parse_config',
]
