"""Turn loop: decide retrieval, generate a script, repair once, render."""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, replace

from ..catalog import Catalog, RetrievalSet
from ..dsp import AudioBuffer, RenderSession, render
from ..lang import Diagnostic, ScriptAST, ScriptSyntaxError, errors, format_script, parse_script, validate
from .context import GeneratorContext, build_context
from .generators import NewQuery, RetrievalDecision, ScriptGenerator, heuristic_decision

log = logging.getLogger(__name__)


class OrchestratorError(RuntimeError):
    def __init__(self, message: str, diagnostics: list[list[Diagnostic]] | None = None):
        self.diagnostics = diagnostics or []
        detail = "".join(
            f"\nattempt {i}:\n" + "\n".join(f"  {d}" for d in ds) for i, ds in enumerate(self.diagnostics, 1)
        )
        super().__init__(message + detail)


class DecisionFallbackWarning(UserWarning):
    pass


@dataclass(frozen=True)
class SessionState:
    turn: int = 0
    prev_script: ScriptAST | None = None
    retrieval: RetrievalSet | None = None
    transcript: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        if self.prev_script is not None and self.retrieval is None:
            raise ValueError("a session with a script must carry its retrieval set")


def decide_retrieval(state: SessionState, prompt: str, generator: ScriptGenerator) -> RetrievalDecision:
    if state.turn == 0 or state.retrieval is None:
        return NewQuery(prompt)
    try:
        return generator.decide(state, prompt)
    except Exception as exc:  # any generator fault degrades to the heuristic
        warnings.warn(f"retrieval verdict failed ({exc}); using keyword heuristic", DecisionFallbackWarning,
                      stacklevel=2)
        return heuristic_decision(state, prompt)


def _attempt(generator: ScriptGenerator, context: GeneratorContext, sample_rate: int):
    text = generator.generate(context)
    try:
        ast = parse_script(text)
    except ScriptSyntaxError as exc:
        return text, None, exc.diagnostics
    return text, ast, errors(validate(ast, context.retrieval, sample_rate))


def step(
    state: SessionState,
    prompt: str,
    generator: ScriptGenerator,
    catalog: Catalog,
    session: RenderSession = RenderSession(),
) -> tuple[SessionState, ScriptAST, AudioBuffer]:
    """Advance the session by one user turn."""
    decision = decide_retrieval(state, prompt, generator)
    retrieval = catalog.query(decision.query, decision.k) if isinstance(decision, NewQuery) else state.retrieval
    log.info("turn %d: %s", state.turn + 1, decision)
    if retrieval is None or not len(retrieval):
        raise OrchestratorError("no assets available")
    transcript = list(state.transcript) + [("user", prompt), ("retrieval", str(decision))]

    prior = format_script(state.prev_script) if state.prev_script is not None else None
    context = build_context(prior, retrieval, prompt)
    text, ast, problems = _attempt(generator, context, session.sample_rate)
    transcript.append(("assistant", text))
    if problems:
        failed = [problems]
        transcript.append(("repair", "\n".join(str(d) for d in problems)))
        context = replace(context, repair_notes=tuple(str(d) for d in problems))
        text, ast, problems = _attempt(generator, context, session.sample_rate)
        transcript.append(("assistant", text))
        if problems:
            raise OrchestratorError("generator produced an invalid script twice", failed + [problems])

    audio = render(ast, catalog, session)
    new_state = SessionState(state.turn + 1, ast, retrieval, tuple(transcript))
    return new_state, ast, audio
