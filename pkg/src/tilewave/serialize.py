"""Deterministic, atomic file output."""

from __future__ import annotations

import json
import os
import tempfile
from importlib import resources


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def atomic_write(path, data) -> None:
    """Write ``data`` (str or bytes) to ``path`` via a temp file and rename."""
    path = os.fspath(path)
    folder = os.path.dirname(os.path.abspath(path))
    os.makedirs(folder, exist_ok=True)
    mode = "wb" if isinstance(data, bytes) else "w"
    fd, tmp = tempfile.mkstemp(prefix=".tw-", dir=folder)
    try:
        with os.fdopen(fd, mode, **({} if mode == "wb" else {"encoding": "utf-8", "newline": "\n"})) as fh:
            fh.write(data)
        # mkstemp creates 0600; give the result the usual umask-derived mode
        umask = os.umask(0)
        os.umask(umask)
        os.chmod(tmp, 0o666 & ~umask)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_json(path, obj) -> None:
    atomic_write(path, dumps(obj))


def load_schema(name: str) -> dict:
    """Bundled JSON schema ``name`` (``region``, ``tile``, ``report``, ...)."""
    text = resources.files("tilewave").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)
