"""Bundled analyses, registered by name."""

from __future__ import annotations

from collections.abc import Callable, Iterable

from ..framework import DEFAULT_CONTEXT_DEPTH, EmbellishedFramework, embellish, for_program
from ..simplehal.flow import LabeledProgram, TaggedFlow
from . import constants, live, reaching
from .base import Setup
from .constants import abstract_eval, cp_transfer
from .live import lv_transfer
from .reaching import rd_transfer

ANALYSES: dict[str, Callable[[LabeledProgram], Setup]] = {
    "rd": reaching.setup,
    "lv": live.setup,
    "cp": constants.setup,
}


def build(name: str, lp: LabeledProgram, flows: Iterable[TaggedFlow], *,
          k: int = DEFAULT_CONTEXT_DEPTH, collapse_contexts: bool = False) -> EmbellishedFramework:
    """Embellished framework for analysis ``name`` on a split program."""
    try:
        make = ANALYSES[name]
    except KeyError:
        raise ValueError(f"unknown analysis {name!r}; choose from {sorted(ANALYSES)}") from None
    s = make(lp)
    impl = for_program(lp, flows, lattice=s.lattice, initial=s.initial,
                       transfer=s.transfer, direction=s.direction)
    return embellish(impl, k, collapse_contexts=collapse_contexts)


__all__ = ["ANALYSES", "Setup", "abstract_eval", "build", "cp_transfer",
           "lv_transfer", "rd_transfer"]
