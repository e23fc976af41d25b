"""Asset catalog: sound objects plus unit embeddings, with exact cosine search."""

from __future__ import annotations

import base64
import hashlib
import logging
import warnings
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Protocol

import numpy as np

from .dsp.wavio import AudioFileError
from .metadata import SilentAudioError, SoundObject, extract_metadata

log = logging.getLogger(__name__)

FORMAT_HEADER = "# sonicmix-catalog v1"
AUDIO_SUFFIXES = (".wav", ".wave")
DEFAULT_K = 5


class CatalogError(ValueError):
    pass


class IngestWarning(UserWarning):
    pass


class Embedder(Protocol):
    embedder_id: str
    dimension: int

    def __call__(self, text: str) -> np.ndarray: ...


class TrigramEmbedder:
    """Hashed character-trigram bag over lowercased, space-padded text."""

    def __init__(self, dimension: int = 512):
        self.dimension = dimension
        self.embedder_id = f"trigram-hash-{dimension}"

    def __call__(self, text: str) -> np.ndarray:
        norm = " ".join(text.lower().split())
        if not norm:
            raise ValueError("cannot embed empty text")
        padded = f" {norm} "
        v = np.zeros(self.dimension)
        for i in range(len(padded) - 2):
            digest = hashlib.blake2b(padded[i : i + 3].encode("utf-8"), digest_size=8).digest()
            v[int.from_bytes(digest, "little") % self.dimension] += 1.0
        return v / np.linalg.norm(v)


_default_embedder = TrigramEmbedder()


def embed(text: str, embedder: Embedder = _default_embedder) -> np.ndarray:
    return embedder(text)


@dataclass(frozen=True)
class RetrievalSet:
    query: str
    hits: tuple[tuple[SoundObject, float], ...]

    @property
    def assets(self) -> list[SoundObject]:
        return [obj for obj, _ in self.hits]

    @property
    def names(self) -> list[str]:
        return [obj.name for obj, _ in self.hits]

    def __contains__(self, name: object) -> bool:
        return name in self.names

    def __len__(self) -> int:
        return len(self.hits)


@dataclass(frozen=True, eq=False)
class Catalog:
    entries: tuple[SoundObject, ...] = ()
    vectors: np.ndarray = field(default_factory=lambda: np.zeros((0, _default_embedder.dimension)))
    embedder: Embedder = _default_embedder
    base_dir: Path | None = None  # relative source paths resolve against this

    def __post_init__(self):
        names = [e.name for e in self.entries]
        if len(set(names)) != len(names):
            raise CatalogError("catalog entry names must be unique")
        if self.vectors.shape != (len(self.entries), self.embedder.dimension):
            raise CatalogError("one vector of the embedder's dimension is required per entry")

    @classmethod
    def from_objects(cls, objects: Sequence[SoundObject], embedder: Embedder = _default_embedder, base_dir=None):
        vectors = np.array([embedder(o.description) for o in objects]).reshape(len(objects), embedder.dimension)
        return cls(tuple(objects), vectors, embedder, base_dir)

    @property
    def embedder_id(self) -> str:
        return self.embedder.embedder_id

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[SoundObject]:
        return iter(self.entries)

    def __contains__(self, name: object) -> bool:
        return any(e.name == name for e in self.entries)

    def get(self, name: str) -> SoundObject:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def asset_path(self, name: str) -> Path:
        p = Path(self.get(name).source_path)
        if not p.is_absolute() and self.base_dir is not None:
            p = self.base_dir / p
        return p

    def restrict(self, names: Sequence[str]) -> Catalog:
        keep = [i for i, e in enumerate(self.entries) if e.name in set(names)]
        return Catalog(tuple(self.entries[i] for i in keep), self.vectors[keep], self.embedder, self.base_dir)

    def scores(self, text: str) -> np.ndarray:
        return self.vectors @ self.embedder(text)

    def query(self, text: str, k: int = DEFAULT_K) -> RetrievalSet:
        """Top-k by cosine similarity; ties go to the lexicographically smaller name."""
        if k < 1:
            raise ValueError("k must be >= 1")
        if not self.entries:
            return RetrievalSet(text, ())
        scores = self.scores(text)
        order = sorted(range(len(self.entries)), key=lambda i: (-scores[i], self.entries[i].name))
        hits = tuple((self.entries[i], float(np.clip(scores[i], -1.0, 1.0))) for i in order[:k])
        return RetrievalSet(text, hits)

    def dumps(self) -> str:
        lines = [
            FORMAT_HEADER,
            f"embedder: {self.embedder_id}",
            f"dimension: {self.embedder.dimension}",
            f"count: {len(self.entries)}",
        ]
        for entry, vec in zip(self.entries, self.vectors):
            packed = base64.b64encode(np.asarray(vec, dtype="<f8").tobytes()).decode("ascii")
            lines += ["", "[entry]", entry.to_record(), f"vector: {packed}"]
        return "\n".join(lines) + "\n"

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")

    @classmethod
    def loads(cls, text: str, embedder: Embedder = _default_embedder, base_dir=None) -> Catalog:
        head, *records = text.split("\n[entry]\n")
        header = head.splitlines()
        if not header or header[0].strip() != FORMAT_HEADER:
            raise CatalogError("not a catalog file (bad header)")
        meta = dict(line.split(": ", 1) for line in header[1:] if ": " in line)
        if meta.get("embedder") != embedder.embedder_id:
            raise CatalogError(
                f"catalog was built with embedder {meta.get('embedder')!r}, "
                f"but {embedder.embedder_id!r} is configured"
            )
        dim = int(meta["dimension"])
        entries, vectors = [], []
        for rec in records:
            body, _, packed = rec.rstrip("\n").rpartition("\nvector: ")
            entries.append(SoundObject.from_record(body))
            vectors.append(np.frombuffer(base64.b64decode(packed), dtype="<f8"))
        if len(entries) != int(meta["count"]):
            raise CatalogError("catalog entry count does not match header")
        return cls(tuple(entries), np.array(vectors).reshape(len(entries), dim), embedder, base_dir)

    @classmethod
    def load(cls, path: str | Path, embedder: Embedder = _default_embedder) -> Catalog:
        path = Path(path)
        return cls.loads(path.read_text(encoding="utf-8"), embedder, base_dir=path.parent.resolve())


def ingest(directory: str | Path, embedder: Embedder = _default_embedder) -> Catalog:
    """Build a catalog from every audio file directly inside ``directory``.

    Unreadable or silent files are skipped with an ``IngestWarning``.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise FileNotFoundError(f"{directory}: not a directory")
    objects: list[SoundObject] = []
    for path in sorted(p for p in directory.iterdir() if p.suffix.lower() in AUDIO_SUFFIXES):
        try:
            obj = extract_metadata(path.resolve())
        except (AudioFileError, SilentAudioError) as exc:
            warnings.warn(f"skipping {path.name}: {exc}", IngestWarning, stacklevel=2)
            continue
        if any(o.name == obj.name for o in objects):
            warnings.warn(f"skipping {path.name}: duplicate asset name {obj.name!r}", IngestWarning, stacklevel=2)
            continue
        objects.append(obj)
    log.info("ingested %d assets from %s", len(objects), directory)
    return Catalog.from_objects(objects, embedder)
