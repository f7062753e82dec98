"""
Error types
Exceptions raised by the algebra engine and the presentation parser
"""


class PBWError(Exception):
    """Base class for every error raised by pbwforge"""


class StructuralError(PBWError, ValueError):
    """Malformed input: alphabet mismatch, invalid rule set, missing table entry"""


class DomainError(PBWError, ValueError):
    """Operation undefined on its input, e.g. the degree of the zero element"""


class ContractError(PBWError):
    """A documented precondition of an operation does not hold"""


class ParseError(PBWError):
    """Presentation text could not be parsed; carries the diagnostic list"""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        summary = '; '.join(str(d) for d in self.diagnostics[:3])
        if len(self.diagnostics) > 3:
            summary += f' (+{len(self.diagnostics) - 3} more)'
        super().__init__(summary or 'parse failed')


class CatalogError(PBWError, LookupError):
    """Unknown catalog entry; carries the available names"""

    def __init__(self, name, available):
        self.available = list(available)
        super().__init__(f"Unknown catalog entry {name!r}. Available: {', '.join(self.available)}")
