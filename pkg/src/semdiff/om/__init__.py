"""Object models, membership checking, canonical forms and enumeration."""

from .canonical import CanonicalForm, canonical_relabel, canonicalize
from .enumerate import (DEFAULT_MAX_SCOPE, ScopeTooLarge, count_labeled,
                        enumerate_oms, iter_labeled_oms)
from .evaluate import (RULES, RuleViolation, SatisfactionReport, evaluate,
                       is_member)
from .model import (EMPTY, EnumLit, ObjectModel, ObjRef, PrimValue, Slot,
                    SlotValue)
from .od import od_from_json, od_to_json, parse_od, parse_od_named, render_od

__all__ = [
    "DEFAULT_MAX_SCOPE", "EMPTY", "RULES", "CanonicalForm", "EnumLit",
    "ObjRef", "ObjectModel", "PrimValue", "RuleViolation",
    "SatisfactionReport", "ScopeTooLarge", "Slot", "SlotValue",
    "canonical_relabel", "canonicalize", "count_labeled", "enumerate_oms",
    "evaluate", "is_member", "iter_labeled_oms", "od_from_json", "od_to_json",
    "parse_od", "parse_od_named", "render_od",
]
