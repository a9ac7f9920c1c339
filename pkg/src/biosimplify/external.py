"""Line-oriented subprocess adapters.

A worker command reads one query per line on stdin and answers with exactly
one line on stdout.  :class:`LinePool` keeps ``size`` workers alive and hands
them out to concurrent callers; a worker that times out is killed and
respawned so a late reply can never be read as the answer to the next query.
"""

from __future__ import annotations

import logging
import queue
import shlex
import subprocess
import threading

logger = logging.getLogger(__name__)


class SpawnFailure(RuntimeError):
    """The external command could not be started."""


class ProtocolTimeout(RuntimeError):
    pass


class LineProcess:
    def __init__(self, command: str | list[str]):
        self.argv = shlex.split(command) if isinstance(command, str) else list(command)
        self._start()

    def _start(self):
        try:
            self.proc = subprocess.Popen(
                self.argv,
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                stderr=subprocess.DEVNULL,
                text=True,
                encoding="utf-8",
                bufsize=1,
            )
        except OSError as exc:
            raise SpawnFailure(f"cannot start {self.argv[0]!r}: {exc}") from exc
        self.replies: queue.Queue = queue.Queue()
        reader = threading.Thread(target=self._pump, args=(self.proc, self.replies), daemon=True)
        reader.start()

    @staticmethod
    def _pump(proc, replies):
        for line in proc.stdout:
            replies.put(line.rstrip("\r\n"))
        replies.put(None)

    def ask(self, line: str, timeout: float) -> str | None:
        """Send one query; return the reply line, or None if the worker died."""
        if self.proc.poll() is not None:
            self.restart()
        try:
            self.proc.stdin.write(line.replace("\n", " ") + "\n")
            self.proc.stdin.flush()
        except (BrokenPipeError, OSError):
            self.restart()
            return None
        try:
            reply = self.replies.get(timeout=timeout)
        except queue.Empty:
            self.restart()
            raise ProtocolTimeout(f"no reply within {timeout}s") from None
        if reply is None:
            self.restart()
        return reply

    def restart(self):
        self.close()
        self._start()

    def close(self):
        if self.proc.poll() is None:
            self.proc.kill()
        self.proc.wait()
        for stream in (self.proc.stdin, self.proc.stdout):
            try:
                stream.close()
            except OSError:
                pass


class LinePool:
    """A fixed-size pool of :class:`LineProcess` workers, safe for threads."""

    def __init__(self, command, size: int = 1, timeout: float = 10.0):
        if size < 1:
            raise ValueError("pool size must be >= 1")
        self.timeout = timeout
        self._idle: queue.Queue = queue.Queue()
        self._workers = []
        for _ in range(size):
            worker = LineProcess(command)
            self._workers.append(worker)
            self._idle.put(worker)

    def ask(self, line: str) -> str | None:
        """Return the reply, or None on timeout / protocol failure."""
        worker = self._idle.get()
        try:
            return worker.ask(line, self.timeout)
        except ProtocolTimeout as exc:
            logger.warning("external worker %s: %s", worker.argv[0], exc)
            return None
        finally:
            self._idle.put(worker)

    def close(self):
        for w in self._workers:
            w.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
