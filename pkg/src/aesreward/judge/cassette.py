"""Recorded judge exchanges keyed by request content, for deterministic replay."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path


class CassetteMiss(KeyError):
    """Replay mode has no recording for this request."""


def request_key(template_id: str, substitutions: dict[str, str], image_hashes: list[str]) -> str:
    canonical = json.dumps(
        {
            "template_id": template_id,
            "substitutions": substitutions,
            "image_hashes": list(image_hashes),
        },
        sort_keys=True,
        ensure_ascii=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def image_hash(png_bytes: bytes) -> str:
    return hashlib.sha256(png_bytes).hexdigest()


class CassetteStore:
    """One JSON file per recorded request under a root directory.

    Reads may happen concurrently; recording is single-writer and uses an
    atomic rename so readers never observe partial files.
    """

    def __init__(self, root: str | Path):
        self.root = Path(root)

    def path_for(self, key: str) -> Path:
        return self.root / f"{key}.json"

    def load(self, key: str) -> str:
        path = self.path_for(key)
        try:
            record = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise CassetteMiss(f"no cassette for key {key} under {self.root}") from None
        return record["reply"]

    def save(
        self,
        key: str,
        reply: str,
        template_id: str,
        substitutions: dict[str, str],
        image_hashes: list[str],
    ) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        record = {
            "key": key,
            "template_id": template_id,
            "substitutions": substitutions,
            "image_hashes": list(image_hashes),
            "reply": reply,
        }
        path = self.path_for(key)
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(record, fh, indent=2, sort_keys=True, ensure_ascii=True)
                fh.write("\n")
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return path
