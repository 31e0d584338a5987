"""
Fehlerklassen für preview-regret.

Unzulässigkeit oder Unbeschränktheit eines LPs sind Ergebnisse, keine
Fehler. Die Klassen hier beschreiben Eingaben, die nicht zur Rechnung
passen, verletzte Annahmen und überschrittene Budgets.
"""

from typing import Any


class PreviewRegretError(Exception):
    """Basisklasse für alle preview-regret Fehler"""

    def __init__(
        self,
        message: str,
        *,
        user_message: str | None = None,
        context: dict[str, Any] | None = None,
        suggestion: str | None = None,
    ):
        """
        Args:
            message: Technische Fehlermeldung für Entwickler
            user_message: Verständliche Fehlermeldung für Anwender
            context: Zusätzlicher Kontext zur Fehlerbehebung
            suggestion: Konkreter Lösungsvorschlag
        """
        super().__init__(message)
        self.user_message = user_message or message
        self.context = context or {}
        self.suggestion = suggestion

    def __str__(self) -> str:
        base_msg = super().__str__()
        if self.suggestion:
            return f"{base_msg}\n💡 Tipp: {self.suggestion}"
        return base_msg


# === Eingabefehler ===


class DimensionsError(PreviewRegretError):
    """Nicht zueinander passende Dimensionen"""

    def __init__(self, operation: str, erwartet: Any, erhalten: Any):
        super().__init__(
            f"{operation}: Dimension {erhalten} passt nicht zu {erwartet}",
            user_message=f"Die Dimensionen bei '{operation}' passen nicht zusammen.",
            suggestion="Prüfe die Form der Matrizen und die Dimension der Polytope.",
            context={"erwartet": erwartet, "erhalten": erhalten},
        )
        self.operation = operation


class EingabeSyntaxError(PreviewRegretError):
    """Ungültige Eingabedatei oder ungültiges Schema"""

    def __init__(self, eingabe: str, expected_format: str, zeile: int | None = None):
        ort = f" (Zeile {zeile})" if zeile is not None else ""
        super().__init__(
            f"Ungültige Eingabe{ort}: {eingabe}",
            user_message=f"Die Eingabe hat nicht das richtige Format{ort}.",
            suggestion=f"Erwartetes Format: {expected_format}",
        )
        self.eingabe = eingabe
        self.expected_format = expected_format
        self.zeile = zeile


class KonfigurationsError(PreviewRegretError):
    """Fehler bei der Konfiguration"""

    def __init__(self, parameter: str, value: Any, expected_type: type):
        super().__init__(
            f"Ungültige Konfiguration: {parameter}={value!r} (erwartet: {expected_type.__name__})",
            user_message="Die Einstellung ist ungültig.",
            suggestion=f"Der Parameter '{parameter}' muss vom Typ {expected_type.__name__} sein.",
        )
        self.parameter = parameter
        self.value = value
        self.expected_type = expected_type


# === Geometrische Fehler ===


class LeereMengeError(PreviewRegretError):
    """Operation verlangt eine nichtleere Menge"""

    def __init__(self, operation: str):
        super().__init__(
            f"{operation}: die Menge ist leer",
            user_message="Die Berechnung braucht eine nichtleere Menge.",
            suggestion="Prüfe, ob sich die Nebenbedingungen widersprechen.",
        )
        self.operation = operation


class UnbeschraenktError(PreviewRegretError):
    """Operation verlangt eine beschränkte Menge"""

    def __init__(self, operation: str, richtung: Any = None):
        super().__init__(
            f"{operation}: die Menge ist unbeschränkt",
            user_message="Die Menge ist in mindestens einer Richtung unbeschränkt.",
            suggestion="Ergänze Schranken für alle Zustände, Eingänge und Störungen.",
            context={"richtung": richtung},
        )
        self.operation = operation


class NormalformError(PreviewRegretError):
    """Polytop enthält den Ursprung nicht im Inneren (h > 0 verletzt)"""

    def __init__(self, operation: str, min_rhs: float):
        super().__init__(
            f"{operation}: rechte Seite nicht strikt positiv (min h = {min_rhs:.3e})",
            user_message="Das Polytop muss den Ursprung im Inneren enthalten.",
            suggestion="Verschiebe den Ursprung vorher auf ein inneres Gleichgewicht (shift_origin).",
        )
        self.min_rhs = min_rhs


class EnthaltenseinError(PreviewRegretError):
    """Erwartete Inklusion X ⊆ Y gilt nicht"""

    def __init__(self, operation: str, verletzung: float):
        super().__init__(
            f"{operation}: Inklusion verletzt um {verletzung:.3e}",
            user_message="Die erste Menge liegt nicht in der zweiten.",
            suggestion="Der verschachtelte Hausdorff-Abstand braucht X ⊆ Y.",
        )
        self.verletzung = verletzung


class KomplexitaetsError(PreviewRegretError):
    """Fehler bei zu komplexen Berechnungen"""

    def __init__(
        self,
        operation: str,
        complexity: int,
        max_allowed: int,
        suggestion: str | None = None,
    ):
        super().__init__(
            f"Operation '{operation}' zu komplex: {complexity} > {max_allowed}",
            user_message="Diese Berechnung überschreitet das konfigurierte Budget.",
            suggestion=suggestion
            or "Verkleinere den Vorschauhorizont oder erhöhe das Budget in der Konfiguration.",
        )
        self.operation = operation
        self.complexity = complexity
        self.max_allowed = max_allowed


# === Numerische Fehler ===


class LoeserError(PreviewRegretError):
    """Numerischer Löser ist ausgefallen (nicht: Problem unzulässig)"""

    def __init__(self, method: str, problem: str):
        super().__init__(
            f"{method} fehlgeschlagen: {problem}",
            user_message="Der numerische Löser konnte das Problem nicht bearbeiten.",
            suggestion="Skaliere die Eingabedaten oder entferne fast parallele Ungleichungen.",
        )
        self.method = method


class KonvergenzError(LoeserError):
    """Spezifisch für Konvergenzprobleme"""

    def __init__(self, method: str, iterations: int):
        super().__init__(method, f"Keine Konvergenz nach {iterations} Iterationen")
        self.suggestion = "Erhöhe die Iterationsgrenze oder lockere die Toleranz."
        self.iterations = iterations


class NichtPositivDefinitError(PreviewRegretError):
    """Matrix ist nicht symmetrisch positiv definit"""

    def __init__(self, operation: str, grund: str = ""):
        super().__init__(
            f"{operation}: Matrix nicht positiv definit {grund}".strip(),
            user_message="Die Matrix ist nicht symmetrisch positiv definit.",
            suggestion="Ein Ellipsoid braucht eine positiv definite Formmatrix.",
        )


# === Annahmen ===


class AnnahmeError(PreviewRegretError):
    """Eine Voraussetzung der Schranken lässt sich nicht verifizieren"""

    def __init__(self, annahme: str, grund: str, suggestion: str | None = None):
        super().__init__(
            f"Annahme nicht verifizierbar ({annahme}): {grund}",
            user_message=f"Die Voraussetzung '{annahme}' ist nicht erfüllt.",
            suggestion=suggestion,
        )
        self.annahme = annahme
        self.grund = grund


class NichtStabilisierbarError(AnnahmeError):
    """(A, B) ist nicht stabilisierbar"""

    def __init__(self, eigenwert: complex | None = None):
        super().__init__(
            "Stabilisierbarkeit",
            f"instabiler, nicht steuerbarer Eigenwert {eigenwert}",
            suggestion="Ohne Stabilisierbarkeit gibt es keinen kontrahierenden Regler.",
        )
        self.eigenwert = eigenwert


class NichtSteuerbarError(AnnahmeError):
    """Kollaboratives System ist nicht steuerbar"""

    def __init__(self, rang: int, n: int):
        super().__init__(
            "Steuerbarkeit",
            f"Rang der Steuerbarkeitsmatrix {rang} < {n}",
            suggestion="Verwende algorithm1, das nur Stabilisierbarkeit braucht.",
        )
        self.rang = rang


class KeinGleichgewichtError(AnnahmeError):
    """Kein erzwungenes Gleichgewicht in der Beschränkungsmenge"""

    def __init__(self, grund: str = "LP unzulässig"):
        super().__init__(
            "erzwungenes Gleichgewicht",
            grund,
            suggestion="Die sichere Menge enthält keinen Ruhepunkt des Systems.",
        )


class OrakelGueltigkeitsError(AnnahmeError):
    """Geschlossene Formel außerhalb ihres Gültigkeitsbereichs"""

    def __init__(self, formel: str, bedingung: str):
        super().__init__(formel, f"Bedingung verletzt: {bedingung}")


class NichtInvariantError(PreviewRegretError):
    """Menge ist nicht robust kontrolliert invariant"""

    def __init__(self, punkt: Any, verletzung: float):
        super().__init__(
            f"Menge nicht invariant: Punkt {punkt} verletzt Pre(C) um {verletzung:.3e}",
            user_message="Die Endmenge ist keine robust kontrollierte invariante Menge.",
            suggestion="Verwende die maximale RCIS (--terminal auto).",
            context={"punkt": punkt},
        )
        self.punkt = punkt
        self.verletzung = verletzung


class UnzulaessigerStartError(PreviewRegretError):
    """Startzustand liegt nicht im zulässigen Bereich des MPC"""

    def __init__(self, x0: Any):
        super().__init__(
            f"Startzustand {x0} mit Vorschau nicht im zulässigen Bereich",
            user_message="Der MPC ist im Startzustand nicht lösbar.",
            suggestion="Wähle einen Startzustand in der Projektion von F_p(C).",
        )
        self.x0 = x0


# === Utility-Funktionen ===


def handle_preview_regret_error(error: Exception) -> str:
    """
    Wandelt jede Exception in eine verständliche Fehlermeldung um

    Args:
        error: Die aufgetretene Exception

    Returns:
        Fehlermeldung für Anwender
    """
    if isinstance(error, PreviewRegretError):
        if error.suggestion:
            return f"{error.user_message} 💡 {error.suggestion}"
        return error.user_message
    elif isinstance(error, FileNotFoundError):
        return f"Datei nicht gefunden: {error.filename}"
    elif isinstance(error, ValueError):
        return f"Ungültiger Wert: {error}"
    return f"Unerwarteter Fehler: {error}"
