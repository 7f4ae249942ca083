import threading
from typing import Any, Callable, Dict, Hashable, Iterator, Tuple


class PublishOnceCache:
    """Append-only memo table: one writer per missing key, readers see only finished values"""

    def __init__(self, name: str):
        self.name = name
        self._values: Dict[Hashable, Any] = {}
        self._locks: Dict[Hashable, threading.Lock] = {}
        self._guard = threading.Lock()

    def get_or_compute(self, key: Hashable, compute: Callable[[], Any]) -> Any:
        try:
            return self._values[key]
        except KeyError:
            pass

        with self._guard:
            lock = self._locks.setdefault(key, threading.Lock())
        with lock:
            if key in self._values:
                return self._values[key]
            value = compute()
            self._values[key] = value
        with self._guard:
            self._locks.pop(key, None)
        return value

    def publish(self, key: Hashable, value: Any):
        """Seed a finished value (e.g. loaded from the persistent cache)"""
        with self._guard:
            self._values.setdefault(key, value)

    def get(self, key: Hashable, default: Any = None) -> Any:
        return self._values.get(key, default)

    def items(self) -> Iterator[Tuple[Hashable, Any]]:
        return iter(list(self._values.items()))

    def __contains__(self, key: Hashable) -> bool:
        return key in self._values

    def __len__(self) -> int:
        return len(self._values)
