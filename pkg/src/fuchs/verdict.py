"""Tri-state decision outcomes with re-checkable payloads."""

from __future__ import annotations

from dataclasses import dataclass, field

REALISABLE = "realisable"
NOT_REALISABLE = "not_realisable"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    """Outcome of one realisability decision.

    Exactly one of ``certificate``, ``obstruction``, ``gap`` is populated,
    matching ``kind``; ``theorem`` names the classification rule that
    produced the outcome.  Certificates and obstructions carry enough data
    to re-derive the verdict by arithmetic alone.
    """

    kind: str
    theorem: str
    query: str
    ring_class: str
    certificate: dict | None = None
    obstruction: dict | None = None
    gap: dict | None = None
    checked: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.kind not in (REALISABLE, NOT_REALISABLE, UNKNOWN):
            raise ValueError(f"bad verdict kind {self.kind}")
        payloads = [self.certificate, self.obstruction, self.gap]
        expected = {REALISABLE: 0, NOT_REALISABLE: 1, UNKNOWN: 2}[self.kind]
        for idx, payload in enumerate(payloads):
            if (payload is not None) != (idx == expected):
                raise ValueError("verdict payload does not match its kind")

    @property
    def is_realisable(self) -> bool:
        return self.kind == REALISABLE

    @property
    def is_not_realisable(self) -> bool:
        return self.kind == NOT_REALISABLE

    @property
    def is_unknown(self) -> bool:
        return self.kind == UNKNOWN

    def payload(self) -> dict:
        return self.certificate or self.obstruction or self.gap or {}


def realisable(theorem, query, ring_class, certificate) -> Verdict:
    return Verdict(REALISABLE, theorem, query, ring_class, certificate=certificate)


def not_realisable(theorem, query, ring_class, obstruction) -> Verdict:
    return Verdict(NOT_REALISABLE, theorem, query, ring_class, obstruction=obstruction)


def unknown(theorem, query, ring_class, gap) -> Verdict:
    return Verdict(UNKNOWN, theorem, query, ring_class, gap=gap)
