"""
config.py - Configurações com Pydantic

Carrega variáveis de .env e do ambiente. Apenas o diagnóstico (logging)
é configurável por ambiente; os artefatos dependem só das flags e do JSON.
"""

from typing import Optional

from pydantic import ConfigDict
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """
    Configurações da aplicação.

    Carrega variáveis de:
    1. .env (arquivo local)
    2. Variáveis de ambiente do SO
    """

    # ═══════════════════════════════════════════════════════════
    # LOGGING
    # ═══════════════════════════════════════════════════════════

    LOG_LEVEL: str = "INFO"
    """Nível de log: DEBUG, INFO, WARNING, ERROR"""

    LOG_FORMAT: str = "text"
    """Formato: json ou text"""

    LOG_FILE: Optional[str] = None
    """Arquivo de log (None = stderr)"""

    # ═══════════════════════════════════════════════════════════
    # PYDANTIC CONFIG
    # ═══════════════════════════════════════════════════════════

    model_config = ConfigDict(
        extra='ignore',
        env_file='.env',
        case_sensitive=True
    )

    def __repr__(self):
        return f"Settings(log_level={self.LOG_LEVEL}, log_format={self.LOG_FORMAT})"


# ═══════════════════════════════════════════════════════════
# INSTÂNCIA GLOBAL
# ═══════════════════════════════════════════════════════════

settings = Settings()
