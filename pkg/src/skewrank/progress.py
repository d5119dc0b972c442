"""Throttled progress lines on stderr for long computations."""

import sys
import time

INTERVAL = 5.0
_enabled = True


def set_enabled(flag):
    global _enabled
    _enabled = bool(flag)


class Progress:
    """Call ``update(done)`` freely; a line is printed at most every INTERVAL seconds."""

    def __init__(self, label, total=None, stream=None):
        self.label = label
        self.total = total
        self.stream = stream
        self.start = self.last = time.monotonic()

    def update(self, done):
        if not _enabled:
            return
        now = time.monotonic()
        if now - self.last < INTERVAL:
            return
        self.last = now
        of = f"/{self.total}" if self.total is not None else ""
        stream = self.stream or sys.stderr
        print(f"[{self.label}] {done}{of} after {now - self.start:.0f}s", file=stream, flush=True)
