"""
Gemeinsame Infrastruktur: Konfiguration, Fehlerklassen, Ein-/Ausgabe.
"""

from .config import PreviewRegretConfig, config
from .errors import (
    AnnahmeError,
    DimensionsError,
    EingabeSyntaxError,
    EnthaltenseinError,
    KeinGleichgewichtError,
    KomplexitaetsError,
    KonfigurationsError,
    KonvergenzError,
    LeereMengeError,
    LoeserError,
    NichtInvariantError,
    NichtPositivDefinitError,
    NichtStabilisierbarError,
    NichtSteuerbarError,
    NormalformError,
    OrakelGueltigkeitsError,
    PreviewRegretError,
    UnbeschraenktError,
    UnzulaessigerStartError,
    handle_preview_regret_error,
)
from .serialisierung import (
    lade_json,
    lese_csv,
    pruefe_schema,
    schreibe_csv,
    schreibe_json,
)

__all__ = [
    # ⚙️ Konfiguration
    "PreviewRegretConfig",
    "config",
    # ❌ Fehler
    "PreviewRegretError",
    "AnnahmeError",
    "DimensionsError",
    "EingabeSyntaxError",
    "EnthaltenseinError",
    "KeinGleichgewichtError",
    "KomplexitaetsError",
    "KonfigurationsError",
    "KonvergenzError",
    "LeereMengeError",
    "LoeserError",
    "NichtInvariantError",
    "NichtPositivDefinitError",
    "NichtStabilisierbarError",
    "NichtSteuerbarError",
    "NormalformError",
    "OrakelGueltigkeitsError",
    "UnbeschraenktError",
    "UnzulaessigerStartError",
    "handle_preview_regret_error",
    # 💾 Ein-/Ausgabe
    "lade_json",
    "lese_csv",
    "pruefe_schema",
    "schreibe_csv",
    "schreibe_json",
]
