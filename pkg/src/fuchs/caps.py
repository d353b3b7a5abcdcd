"""Enumeration caps, overridable through the FUCHS_ORACLE_CAP env var."""

from __future__ import annotations

import os

RADICAL_ENUM_CAP = 625
UNIT_GROUP_CAP = 2 ** 12


def oracle_cap(default: int) -> int:
    value = os.environ.get("FUCHS_ORACLE_CAP")
    return int(value) if value else default
