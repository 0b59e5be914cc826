# tests/conftest.py
"""Fixtures compartilhadas"""

from pathlib import Path

import pytest

from src.infrastructure.config_loader import parse_config
from src.infrastructure.csv_io import load_table, read_header

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
TABLE1_CSV = FIXTURES / "table1.csv"
TABLE1_CONFIG = FIXTURES / "table1.config.json"
TABLE8_CSV = FIXTURES / "table8.csv"


@pytest.fixture
def table1_config():
    return parse_config(TABLE1_CONFIG)


@pytest.fixture
def table1_hierarchies(table1_config):
    """Age (interval), Gender (category), ZIP (mask 4): ordem do vetor"""
    return table1_config.hierarchies()


@pytest.fixture
def table1(table1_config):
    return load_table(TABLE1_CSV, table1_config.attribute_schema(read_header(TABLE1_CSV)))
