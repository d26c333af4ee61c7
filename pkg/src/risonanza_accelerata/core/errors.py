"""
Gerarchia delle eccezioni del sistema.
"""


class RisonanzaError(Exception):
    """Errore base del pacchetto"""


class DomainError(RisonanzaError, ValueError):
    """Violazione di una precondizione di un'operazione fisica"""


class UnitRoleError(DomainError):
    """Grandezza naturale con ruolo errato al confine di un'API"""


class UsageError(RisonanzaError):
    """Uso scorretto: allineamento sbagliato, griglia vuota, opzioni contraddittorie"""


class ConfigFileError(UsageError):
    """File di configurazione key=value malformato"""


class OracleFailure(RisonanzaError):
    """Il root finder dell'oracolo non converge"""
