"""Script generator port: a scripted mock and a remote chat-completion client."""

from __future__ import annotations

import json
import os
import re
from collections import defaultdict, deque
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Protocol, Union

import httpx

from ..catalog import DEFAULT_K

if TYPE_CHECKING:
    from .context import GeneratorContext
    from .loop import SessionState


class GeneratorError(RuntimeError):
    pass


class GeneratorConfigError(GeneratorError):
    pass


@dataclass(frozen=True)
class Reuse:
    def __str__(self) -> str:
        return "reuse"


@dataclass(frozen=True)
class NewQuery:
    query: str
    k: int = DEFAULT_K

    def __post_init__(self):
        if not self.query.strip():
            raise ValueError("query text must be non-empty")

    def __str__(self) -> str:
        return f"new query: {self.query!r} (k={self.k})"


RetrievalDecision = Union[Reuse, NewQuery]


class ScriptGenerator(Protocol):
    def generate(self, context: GeneratorContext) -> str: ...

    def decide(self, state: SessionState, prompt: str) -> RetrievalDecision: ...


_STOPWORDS = frozenset(
    """a an the and or but of to in on onto into with without for from by at as is are was were be been
    it its it's this that these those some any very so too just then than there here me my i you your we
    our us please can could would should will do does did make made let get give want need like sound
    sounds noise""".split()
)

# Words that ask for re-synthesis of what is already there rather than new material.
_EDIT_WORDS = frozenset(
    """add again another more less louder quieter softer harder loud quiet soft volume gain level
    reverb reverberant echo echoey room hall space wet dry roomy compress compressed compression
    compressor punch punchy dynamics squash filter filtered bright brighter brightness dark darker
    muffled bass bassy treble high higher low lower eq boost cut fade faded fading start starts stop
    stops end ending begin later earlier sooner delay delayed shift move longer shorter slower faster
    bit little lot much slightly way now try version redo again instead increase decrease reduce
    raise turn up down keep same tweak adjust change remove less mix balance everything whole one
    two three second seconds ms first last time times tail clean cleaner""".split()
)


def _words(text: str) -> list[str]:
    return re.findall(r"[a-z]+", text.lower())


def _similar(a: str, b: str) -> bool:
    if a == b:
        return True
    n = 0
    for x, y in zip(a, b):
        if x != y:
            break
        n += 1
    return n >= 4


def content_words(prompt: str) -> list[str]:
    seen: list[str] = []
    for w in _words(prompt):
        if len(w) > 2 and w not in _STOPWORDS and w not in _EDIT_WORDS and w not in seen:
            seen.append(w)
    return seen


def heuristic_decision(state: SessionState, prompt: str, k: int = DEFAULT_K) -> RetrievalDecision:
    """NewQuery iff the prompt has a content word absent from every retrieved description."""
    if state.retrieval is None or not len(state.retrieval):
        return NewQuery(prompt, k)
    known = {w for obj in state.retrieval.assets for w in _words(obj.description)}
    novel = [w for w in content_words(prompt) if not any(_similar(w, d) for d in known)]
    return NewQuery(" ".join(novel), k) if novel else Reuse()


_FENCE = re.compile(r"```[ \t]*([A-Za-z0-9_-]*)[ \t]*\n(.*?)```", re.S)


def extract_script(reply: str) -> str:
    """Pull the fenced Mixer Script out of a model reply (whole reply if unfenced)."""
    blocks = _FENCE.findall(reply)
    if not blocks:
        return reply.strip() + "\n"
    tagged = [body for tag, body in blocks if tag.lower() in ("mxs", "mixerscript", "mixer")]
    return (tagged or [blocks[0][1]])[0]


class MockGenerator:
    """Replays canned replies keyed by prompt; each prompt's replies are consumed in order.

    Retrieval decisions use the keyword heuristic. Every context received
    is kept in ``contexts`` for inspection.
    """

    def __init__(self, replies: dict[str, list[str]]):
        self._replies = {p: list(r) for p, r in replies.items()}
        self._queues: dict[str, deque[str]] = defaultdict(deque)
        self.reset()
        self.contexts: list[GeneratorContext] = []

    def reset(self) -> None:
        self._queues = defaultdict(deque, {p: deque(r) for p, r in self._replies.items()})
        self.contexts = []

    @classmethod
    def from_fixture(cls, path: str | Path) -> MockGenerator:
        """Fixture JSON: ``{"turns": [{"prompt": ..., "replies": [...]}, ...]}``."""
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        replies: dict[str, list[str]] = defaultdict(list)
        for turn in data["turns"]:
            replies[turn["prompt"]].extend(turn["replies"])
        return cls(dict(replies))

    @property
    def prompts(self) -> list[str]:
        return list(self._replies)

    def generate(self, context: GeneratorContext) -> str:
        self.contexts.append(context)
        queue = self._queues.get(context.prompt)
        if not queue:
            raise GeneratorError(f"mock generator has no reply for prompt {context.prompt!r}")
        return extract_script(queue.popleft())

    def decide(self, state: SessionState, prompt: str) -> RetrievalDecision:
        return heuristic_decision(state, prompt)


DECISION_INSTRUCTIONS = """\
You manage the asset retrieval step of a sound design assistant.
Decide whether the user's new request needs different sound assets than the ones already retrieved.
Reply with exactly one line:
REUSE
or
NEW: <short search query in English naming the sounds to look up>"""


class RemoteGenerator:
    """Chat-completion client configured from ``SONICRAG_LLM_*`` variables."""

    def __init__(self, endpoint: str, model: str, key: str | None = None, timeout_s: float = 60.0,
                 client: httpx.Client | None = None):
        self.endpoint = endpoint
        self.model = model
        self.key = key
        self.timeout_s = timeout_s
        self._client = client or httpx.Client(timeout=timeout_s)

    @classmethod
    def from_env(cls, env: dict[str, str] | None = None, client: httpx.Client | None = None) -> RemoteGenerator:
        env = os.environ if env is None else env
        endpoint = env.get("SONICRAG_LLM_ENDPOINT")
        if not endpoint:
            raise GeneratorConfigError(
                "SONICRAG_LLM_ENDPOINT is not set; point it at a chat-completions URL "
                "(optionally also SONICRAG_LLM_KEY, SONICRAG_LLM_MODEL, SONICRAG_LLM_TIMEOUT_S)"
            )
        try:
            timeout = float(env.get("SONICRAG_LLM_TIMEOUT_S", "60"))
        except ValueError as exc:
            raise GeneratorConfigError("SONICRAG_LLM_TIMEOUT_S must be a number") from exc
        return cls(endpoint, env.get("SONICRAG_LLM_MODEL", "gpt-4o"), env.get("SONICRAG_LLM_KEY"), timeout, client)

    def _chat(self, system: str, user: str) -> str:
        headers = {"Content-Type": "application/json"}
        if self.key:
            headers["Authorization"] = f"Bearer {self.key}"
        payload = {
            "model": self.model,
            "temperature": 0,
            "messages": [{"role": "system", "content": system}, {"role": "user", "content": user}],
        }
        try:
            resp = self._client.post(self.endpoint, json=payload, headers=headers, timeout=self.timeout_s)
            resp.raise_for_status()
            return resp.json()["choices"][0]["message"]["content"]
        except (httpx.HTTPError, KeyError, IndexError, TypeError, ValueError) as exc:
            raise GeneratorError(f"chat completion failed: {exc}") from exc

    def generate(self, context: GeneratorContext) -> str:
        return extract_script(self._chat(context.system_text(), context.prompt))

    def decide(self, state: SessionState, prompt: str) -> RetrievalDecision:
        retrieved = ", ".join(state.retrieval.names) if state.retrieval else "(none)"
        history = "\n".join(f"{role}: {text}" for role, text in state.transcript if role == "user")
        system = f"{DECISION_INSTRUCTIONS}\n\nRetrieved assets: {retrieved}\nEarlier requests:\n{history}"
        return parse_decision(self._chat(system, prompt))


def parse_decision(reply: str, k: int = DEFAULT_K) -> RetrievalDecision:
    line = reply.strip().splitlines()[0].strip() if reply.strip() else ""
    verdict, _, rest = line.partition(":") if ":" in line else line.partition(" ")
    verdict = verdict.strip().upper()
    if verdict == "REUSE":
        return Reuse()
    if verdict == "NEW" and rest.strip():
        return NewQuery(rest.strip(), k)
    raise GeneratorError(f"unrecognised retrieval verdict {reply!r}")
