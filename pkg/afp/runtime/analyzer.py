"""
Analyzer: which hazards to prepare for, and how.

Matched rules are generalized to every cataloged rule sharing a class tag
with them, and each gets a (when, duration, mode) recommendation from the
policy table. Unexplained hazards become a one-off rule built from the
literals the hazard changed.
"""

from typing import List, NamedTuple, Tuple

import structlog

from afp.models.hazard import HazardRule
from afp.models.literals import Condition, Effect, Literal
from afp.models.recommendation import Recommendation

from .knowledge import HazardRecord, KnowledgeBase

logger = structlog.get_logger(__name__)


class Finding(NamedTuple):
    hazards: Tuple[HazardRule, ...]
    recommendation: Recommendation

    @property
    def names(self) -> List[str]:
        return [rule.name for rule in self.hazards]


def synthesize_rule(record: HazardRecord, index: int) -> HazardRule:
    """One-off rule: source and consequence are the changed predicates' values in e and c."""
    changed = sorted(record.pre.true ^ record.observed.true)
    return HazardRule(
        name=f"unknown-{index}",
        source=Condition(frozenset(Literal(p, p in record.pre.true) for p in changed)),
        consequence=Effect(frozenset(Literal(p, p in record.observed.true) for p in changed)),
    )


def analyze(kb: KnowledgeBase, record: HazardRecord) -> List[Finding]:
    """
    Hazard sets to handle for ``record``, each with its recommendation.

    One finding per matched rule in catalog order; findings whose hazard set
    repeats an earlier one are dropped.
    """
    if not record.matched_rules:
        rule = synthesize_rule(record, len(kb.history))
        logger.info("analyzer.unknown_hazard", rule=rule.name)
        return [Finding((rule,), kb.policy.default)]

    findings: List[Finding] = []
    seen = set()
    for name in record.matched_rules:
        matched = kb.rule(name)
        family = tuple(
            rule for rule in kb.catalog if rule.name == name or (rule.tags & matched.tags)
        )
        key = frozenset(rule.name for rule in family)
        if key in seen:
            continue
        seen.add(key)
        findings.append(Finding(family, kb.policy.recommend(matched.tags)))
    logger.info(
        "analyzer.findings",
        matched=list(record.matched_rules),
        hazards=[f.names for f in findings],
    )
    return findings
