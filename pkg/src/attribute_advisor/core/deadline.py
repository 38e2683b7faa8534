import time
from typing import Optional

from .errors import SolveTimeoutError


class Deadline:
    """Cooperative wall-clock limit checked from inside long loops."""

    def __init__(self, seconds: Optional[float]):
        self.seconds = seconds
        self.expires_at = None if seconds is None else time.monotonic() + seconds

    @property
    def expired(self) -> bool:
        return self.expires_at is not None and time.monotonic() >= self.expires_at

    def check(self) -> None:
        if self.expired:
            raise SolveTimeoutError(f"run exceeded {self.seconds:g} s")


def check_deadline(deadline: Optional[Deadline]) -> None:
    if deadline is not None:
        deadline.check()
