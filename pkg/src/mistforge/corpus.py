"""JSONL corpus records: {id, language, label, code}."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .code_model import CodeSnippet, Language, parse
from .errors import InputError
from .style_profile import OriginLabel


@dataclass(frozen=True)
class CorpusSample:
    id: str
    language: Language
    label: OriginLabel
    code: str

    def snippet(self) -> CodeSnippet:
        return parse(self.code, self.language)

    def to_record(self) -> dict:
        return {"id": self.id, "language": self.language.value,
                "label": self.label.value, "code": self.code}


_EXTENSIONS = {".java": Language.JAVA, ".py": Language.PYTHON}


def sample_from_file(path: str | Path, label: OriginLabel,
                     sample_id: str | None = None) -> CorpusSample:
    """Read one .java/.py source file as a corpus sample."""
    path = Path(path)
    language = _EXTENSIONS.get(path.suffix.lower())
    if language is None:
        raise InputError(f"unsupported source extension: {path.suffix!r}")
    return CorpusSample(
        id=sample_id or path.stem,
        language=language,
        label=label,
        code=path.read_text(encoding="utf-8"),
    )


def load_corpus(path: str | Path) -> list[CorpusSample]:
    samples: list[CorpusSample] = []
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            doc = json.loads(line)
            samples.append(CorpusSample(
                id=str(doc["id"]),
                language=Language.from_tag(doc["language"]),
                label=OriginLabel.from_tag(doc["label"]),
                code=doc["code"],
            ))
        except (KeyError, ValueError, TypeError) as exc:
            raise InputError(f"{path}:{lineno}: bad corpus record: {exc}") from exc
    return samples


def save_corpus(samples: Iterable[CorpusSample], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for sample in samples:
            fh.write(json.dumps(sample.to_record(), sort_keys=True) + "\n")


def write_jsonl(records: Iterable[dict], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record, sort_keys=True) + "\n")


def read_jsonl(path: str | Path) -> list[dict]:
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.strip():
            out.append(json.loads(line))
    return out
