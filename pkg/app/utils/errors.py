from typing import Any, Dict, Optional


class KSchurError(Exception):
    """Base error for the k-Schur toolkit"""

    exit_code = 2

    def __init__(self, message: str, context: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.context = context or {}

    def to_dict(self) -> Dict[str, Any]:
        return {"error": type(self).__name__, "message": self.message, **self.context}


class InvalidInput(KSchurError):
    """Malformed partition text, coefficient text or out-of-range argument"""

    exit_code = 3


class DegreeMismatch(KSchurError):
    """Dominance comparison between partitions of different degree"""


class EmptyPartition(KSchurError):
    """Operation undefined on the empty partition"""


class NotKBounded(KSchurError):
    """Partition has a part larger than k"""


class NotInSubspace(KSchurError):
    """Triangular solve left a nonzero residual"""


class NotPolynomial(KSchurError):
    """Rational function is not a polynomial in the requested ring"""


class UnsupportedConversion(KSchurError):
    """No conversion route between the requested bases"""


class UnsupportedRing(KSchurError):
    """Coefficient ring cannot host the requested operation"""


class TheoremViolation(KSchurError):
    """A proven identity failed; always an implementation bug"""


class CacheCorrupted(KSchurError):
    """Persistent cache document is unreadable or has a foreign schema"""
