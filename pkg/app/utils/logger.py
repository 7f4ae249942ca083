import json
import logging
from datetime import datetime, timezone
from typing import Any

from config import settings


class StructuredLogger:
    """Structured JSON logger for the k-Schur computations"""

    def __init__(self, name: str = "kschur"):
        self.logger = logging.getLogger(name)
        self.logger.setLevel(getattr(logging, settings.log_level.upper(), logging.INFO))

        # stderr only; stdout is reserved for emitted documents
        if not self.logger.handlers:
            handler = logging.StreamHandler()
            formatter = logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")
            handler.setFormatter(formatter)
            self.logger.addHandler(handler)
            self.logger.propagate = False

    def _log_structured(self, level: str, message: str, **kwargs: Any):
        """Log structured data"""
        log_data = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": level,
            "message": message,
            **kwargs,
        }
        payload = json.dumps(log_data, default=str)

        if level.lower() == "error":
            self.logger.error(payload)
        elif level.lower() == "warning":
            self.logger.warning(payload)
        elif level.lower() == "debug":
            self.logger.debug(payload)
        else:
            self.logger.info(payload)

    def log_computation(self, object_kind: str, k: Any, index: str, status: str, **kwargs: Any):
        """Log a memo miss or a finished basis computation"""
        self._log_structured(
            "debug",
            f"Computation: {status}",
            object_kind=object_kind,
            k=k,
            index=index,
            status=status,
            **kwargs,
        )

    def log_check_result(self, check: str, case: str, verdict: str, **kwargs: Any):
        """Log a verification verdict"""
        level = "warning" if verdict in ("FAIL", "COUNTEREXAMPLE", "ERROR") else "debug"
        self._log_structured(
            level,
            f"Check {check}: {verdict}",
            check=check,
            case=case,
            verdict=verdict,
            **kwargs,
        )

    def log_error(self, message: str, **kwargs: Any):
        self._log_structured("error", message, **kwargs)

    def log_warning(self, message: str, **kwargs: Any):
        self._log_structured("warning", message, **kwargs)

    def log_info(self, message: str, **kwargs: Any):
        self._log_structured("info", message, **kwargs)

    def log_debug(self, message: str, **kwargs: Any):
        self._log_structured("debug", message, **kwargs)


def setup_logger(name: str = "kschur") -> StructuredLogger:
    """Setup and return a structured logger instance"""
    return StructuredLogger(name)
