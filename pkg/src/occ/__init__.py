"""Open-closed string-topology cobordisms: invariants, vanishing
classification, sewing, transfer identities and TQFT evaluation."""

from __future__ import annotations

from importlib import resources

__version__ = "0.1.0"

from .classifier import Hypotheses, Verdict, check_exhaustiveness, classify, classify_component
from .frobenius import FrobeniusModel, EmbeddingData, builtin_embedding, builtin_model, verify_identity
from .sewing import SewPlan, compose, sew, trace_boundaries
from .surface import (
    BraneLabel,
    Cobordism,
    CobordismInvariants,
    Component,
    canonical_form,
    canonical_key,
    invariants,
    validate,
)
from .formats import parse_occ, parse_plan, print_occ
from .tqft import check_sewing, decompose, evaluate, shadow_assignment


def fixture_path(name: str):
    """Path of a shipped fixture file (e.g. 'fig07_torus.occ')."""
    return resources.files(__name__).joinpath("fixtures", name)


def load_fixture(name: str):
    text = fixture_path(name).read_text(encoding="utf-8")
    return parse_plan(text) if name.endswith(".plan") else parse_occ(text)


__all__ = [
    "BraneLabel",
    "Cobordism",
    "CobordismInvariants",
    "Component",
    "EmbeddingData",
    "FrobeniusModel",
    "Hypotheses",
    "SewPlan",
    "Verdict",
    "builtin_embedding",
    "builtin_model",
    "canonical_form",
    "canonical_key",
    "check_exhaustiveness",
    "check_sewing",
    "classify",
    "classify_component",
    "compose",
    "decompose",
    "evaluate",
    "fixture_path",
    "invariants",
    "load_fixture",
    "parse_occ",
    "parse_plan",
    "print_occ",
    "sew",
    "shadow_assignment",
    "trace_boundaries",
    "validate",
    "verify_identity",
]
