"""
Judgments, environments, rule applications and check results
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, ClassVar, Dict, FrozenSet, Iterator, List, Optional, Tuple

from asyncsub.session.parser import render
from asyncsub.session.types import SessionType
from asyncsub.session.unfolding import erase


class Rule(str, Enum):
    ASMP = 'Asmp'
    END = 'End'
    OUT = 'Out'
    IN = 'In'
    REC_L = 'RecL'
    REC_R1 = 'RecR1'
    REC_R2 = 'RecR2'
    ASMP2 = 'Asmp2'
    ASMP3 = 'Asmp3'


CLOSING_RULES = frozenset({Rule.ASMP, Rule.END, Rule.ASMP2, Rule.ASMP3})
RECURSION_RULES = frozenset({Rule.REC_L, Rule.REC_R1, Rule.REC_R2})
RIGHT_UNFOLDING_RULES = frozenset({Rule.REC_R1, Rule.REC_R2})


class Mode(str, Enum):
    SEMI = 'semi'
    TERMINATING = 'terminating'


PairKey = Tuple[SessionType, SessionType]


def pair_key(left: SessionType, right: SessionType) -> PairKey:
    """Annotation-free identity of a (left, right) pair"""
    return left, erase(right)


ENV_COMPACTION = 64

# (newest right side, older cells)
_Cell = Tuple[SessionType, Any]


def _unwind(cell: Optional[_Cell]) -> List[SessionType]:
    """Right sides of a cell chain in insertion order"""
    rights: List[SessionType] = []
    while cell is not None:
        rights.append(cell[0])
        cell = cell[1]
    rights.reverse()
    return rights


class Environment:
    """
    Set Σ of visited pairs
    Membership compares annotation-erased pairs; the decorated right-hand
    sides are kept per left side, as linked cells, for the Asmp2/Asmp3
    premises. Extending shares all but the newest entries with the parent:
    recent keys sit in a small set that is folded into the shared snapshot
    every ENV_COMPACTION insertions.
    """

    __slots__ = ('_snapshot', '_recent_keys', '_by_left', '_size')

    def __init__(self):
        self._snapshot: FrozenSet[PairKey] = frozenset()
        self._recent_keys: FrozenSet[PairKey] = frozenset()
        self._by_left: Dict[SessionType, Optional[_Cell]] = {}
        self._size = 0

    def __len__(self) -> int:
        return self._size

    def __eq__(self, other) -> bool:
        if not isinstance(other, Environment):
            return NotImplemented
        return self._size == other._size and self.pairs() == other.pairs()

    def __hash__(self) -> int:
        return hash(self.pairs())

    def __repr__(self) -> str:
        return f'Environment(size={self._size})'

    def _has_key(self, key: PairKey) -> bool:
        return key in self._recent_keys or key in self._snapshot

    def contains(self, left: SessionType, right: SessionType) -> bool:
        return self._has_key(pair_key(left, right))

    def extend(self, left: SessionType, right: SessionType) -> 'Environment':
        key = pair_key(left, right)
        extended = Environment.__new__(Environment)
        extended._by_left = dict(self._by_left)
        extended._by_left[left] = (right, self._by_left.get(left))
        if self._has_key(key):
            extended._snapshot, extended._recent_keys = self._snapshot, self._recent_keys
            extended._size = self._size
        elif len(self._recent_keys) + 1 >= ENV_COMPACTION:
            extended._snapshot = self._snapshot | self._recent_keys | {key}
            extended._recent_keys = frozenset()
            extended._size = self._size + 1
        else:
            extended._snapshot = self._snapshot
            extended._recent_keys = self._recent_keys | {key}
            extended._size = self._size + 1
        return extended

    def pairs(self) -> FrozenSet[PairKey]:
        """Every stored pair, annotations erased"""
        return self._snapshot | self._recent_keys

    def rights_for(self, left: SessionType) -> Iterator[SessionType]:
        """Decorated right-hand sides stored with a left side equal to left"""
        return iter(_unwind(self._by_left.get(left)))

    def stored_rights(self) -> Iterator[SessionType]:
        for cell in self._by_left.values():
            yield from _unwind(cell)


@dataclass(frozen=True)
class Judgment:
    """Goal Σ ⊢ left ≤ right"""

    left: SessionType
    right: SessionType
    env: Environment = field(default_factory=Environment)

    def key(self) -> PairKey:
        return pair_key(self.left, self.right)

    def __str__(self) -> str:
        return f"Σ[{len(self.env)}] ⊢ {render(self.left)} ≤ {render(self.right)}"


@dataclass(frozen=True)
class RuleApplication:
    rule: Rule
    consumed: Judgment
    produced: Tuple[Judgment, ...] = ()

    def trace_line(self) -> str:
        return (f"{self.rule.value} | {render(self.consumed.left)} | "
                f"{render(self.consumed.right)} | {len(self.consumed.env)}")


@dataclass(frozen=True)
class Err:
    """No rule applies to the judgment (→err)"""

    judgment: Judgment
    reason: str

    def trace_line(self) -> str:
        return (f"err | {render(self.judgment.left)} | "
                f"{render(self.judgment.right)} | {len(self.judgment.env)}")


@dataclass(frozen=True)
class CheckStats:
    rule_applications: int = 0
    sigma_max: int = 0
    pairs_visited: int = 0


@dataclass(frozen=True)
class CheckResult:
    verdict: ClassVar[str] = ''

    stats: CheckStats

    def to_dict(self) -> Dict[str, Any]:
        return {
            'verdict': self.verdict,
            'rule_applications': self.stats.rule_applications,
            'sigma_max': self.stats.sigma_max,
            'pairs_visited': self.stats.pairs_visited,
        }


@dataclass(frozen=True)
class Subtype(CheckResult):
    verdict: ClassVar[str] = 'subtype'

    trace: Tuple[RuleApplication, ...] = ()


@dataclass(frozen=True)
class NotSubtype(CheckResult):
    verdict: ClassVar[str] = 'not subtype'

    failing: Optional[Judgment] = None
    reason: str = ''
    trace: Tuple[RuleApplication, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        result = super().to_dict()
        result['reason'] = self.reason
        if self.failing is not None:
            result['failing'] = {'left': render(self.failing.left), 'right': render(self.failing.right)}
        return result


@dataclass(frozen=True)
class FuelExhausted(CheckResult):
    verdict: ClassVar[str] = 'fuel exhausted'

    frontier_size: int = 0
    steps_used: int = 0
    trace: Tuple[RuleApplication, ...] = ()


@dataclass(frozen=True)
class Inconclusive(CheckResult):
    verdict: ClassVar[str] = 'inconclusive'
