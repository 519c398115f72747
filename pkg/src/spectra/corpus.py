"""Bundled word corpus: specs, analysis budgets, and pinned expectations.

The corpus directory holds one JSON spec per word plus a manifest carrying
per-word budgets (prefix lengths, window slack, complement bounds) and the
values the verification suite pins against. An alternative corpus can be
supplied through the SPECTRA_CORPUS environment variable or an explicit
path; that is also how the suite's tamper tests operate.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .words import SpecError, WordSpec, parse_word_spec

ENV_VAR = "SPECTRA_CORPUS"


class CorpusError(RuntimeError):
    """Corpus directory missing, unreadable, or structurally invalid."""


@dataclass(frozen=True)
class RadicalJob:
    prefix: int
    n_slack: int
    complement_bound: int
    targets: dict

    @classmethod
    def from_dict(cls, data: dict, defaults: dict) -> "RadicalJob":
        return cls(
            prefix=int(data.get("prefix", defaults.get("radical_prefix", 1024))),
            n_slack=int(data.get("n_slack", defaults.get("n_slack", 16))),
            complement_bound=int(data.get("complement_bound",
                                          defaults.get("complement_bound", 4))),
            targets=dict(data.get("targets", {})),
        )


@dataclass(frozen=True)
class WordEntry:
    name: str
    spec: WordSpec
    candidates: tuple[str, ...]
    radical: RadicalJob
    expected: dict


@dataclass(frozen=True)
class Corpus:
    path: Path
    seed: int
    h: int
    defaults: dict
    floor: dict
    words: dict[str, WordEntry]  # sorted by name


def corpus_dir(path: str | Path | None = None) -> Path:
    if path is not None:
        return Path(path)
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(str(resources.files("spectra").joinpath("corpus")))


def load_corpus(path: str | Path | None = None) -> Corpus:
    """Read and validate a corpus directory. Raises CorpusError."""
    root = corpus_dir(path)
    manifest_path = root / "manifest.json"
    try:
        raw = manifest_path.read_text()
    except OSError as exc:
        raise CorpusError(f"cannot read corpus manifest: {exc}") from exc
    try:
        manifest = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise CorpusError(f"corpus manifest is not valid JSON: {exc}") from exc

    for key in ("seed", "h", "defaults", "words"):
        if key not in manifest:
            raise CorpusError(f"corpus manifest lacks {key!r}")
    defaults = dict(manifest["defaults"])

    words: dict[str, WordEntry] = {}
    for name in sorted(manifest["words"]):
        entry = manifest["words"][name]
        spec_file = root / entry.get("spec_file", f"{name}.json")
        try:
            spec_raw = json.loads(spec_file.read_text())
        except OSError as exc:
            raise CorpusError(f"cannot read spec for {name!r}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise CorpusError(f"spec for {name!r} is not valid JSON: {exc}") from exc
        try:
            spec = parse_word_spec(spec_raw)
        except SpecError as exc:
            raise CorpusError(f"spec for {name!r} is invalid: {exc}") from exc
        words[name] = WordEntry(
            name=name,
            spec=spec,
            candidates=tuple(entry.get("candidates", [])),
            radical=RadicalJob.from_dict(entry.get("radical", {}), defaults),
            expected=dict(entry.get("expected", {})),
        )

    for name, entry in words.items():
        for cand in entry.candidates:
            if cand not in words:
                raise CorpusError(
                    f"word {name!r} lists unknown candidate {cand!r}")

    return Corpus(
        path=root,
        seed=int(manifest["seed"]),
        h=int(manifest["h"]),
        defaults=defaults,
        floor=dict(manifest.get("floor", {})),
        words=words,
    )
