"""Three-valued verdicts with a human-readable reason.

Many of the classification criteria are one-directional: their
hypotheses either apply or they are silent.  ``value`` is True/False
when the criterion decides, and None when it does not determine the
answer.  The reason string always says which hypothesis decided or
failed; ``source`` carries the literature anchor when there is one.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Verdict:
    value: bool | None
    reason: str
    source: str = ""

    @property
    def determined(self) -> bool:
        return self.value is not None

    def __bool__(self) -> bool:
        return self.value is True

    def __str__(self) -> str:
        word = {True: "yes", False: "no", None: "not determined"}[self.value]
        return f"{word} ({self.reason})"
