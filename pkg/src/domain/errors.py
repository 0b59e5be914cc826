"""
Erros de domínio: hierarquia de exceções do toolkit de anonimização
"""


class AnonymizationError(Exception):
    """Erro base de todo o pacote"""


class TableError(AnonymizationError):
    """Arquivo ausente, cabeçalho divergente ou linha irregular"""


class HierarchyError(AnonymizationError):
    """Valor fora do domínio da hierarquia, nível inválido ou falha de validação"""


class ConfigError(AnonymizationError):
    """Configuração JSON inválida"""

    def __init__(self, message: str, pointer: str = ""):
        self.pointer = pointer
        super().__init__(f"{pointer}: {message}" if pointer else message)


class AnonymizationImpossibleError(AnonymizationError):
    """T < k: anonimização não é possível"""


class InvalidArgumentError(AnonymizationError, ValueError):
    """Violação de pré-condição de uma operação"""
