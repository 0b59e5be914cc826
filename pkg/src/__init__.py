# src/__init__.py
"""PrGain Anonymizer - k-anonimização multi-iterativa guiada por ganho de privacidade"""

__version__ = "1.0.0"

from src.config import settings

__all__ = ['settings']
