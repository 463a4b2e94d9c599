"""Greedy 3-AP-free sequences and empirical self-similarity detection.

A prefix is grown one term at a time: the next term is the least integer
above the current maximum that keeps the whole list free of three-term
arithmetic progressions.  Sequences grown this way from well-behaved seeds
settle into a doubling pattern; ``detect_character`` recovers the constant
that governs it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import MalformedInputError, PrefixTooShortError, ResourceLimitError

#: Hard ceiling on greedy extension length, generous for desk-scale runs.
DEFAULT_TERM_CAP = 1 << 20

#: Checked integer width; values beyond this raise instead of growing.
INT_LIMIT = (1 << 63) - 1

_LOG2_3 = math.log2(3.0)


def _check_terms(terms: Sequence[int]) -> tuple[int, ...]:
    """Validate a strictly increasing tuple of checked nonnegative ints."""
    out = tuple(terms)
    if not out:
        raise MalformedInputError("term list is empty")
    last = -1
    for value in out:
        if isinstance(value, bool) or not isinstance(value, int):
            raise MalformedInputError(f"term {value!r} is not an integer")
        if value < 0:
            raise MalformedInputError(f"term {value} is negative")
        if value > INT_LIMIT:
            raise MalformedInputError(f"term {value} exceeds the checked 64-bit range")
        if value <= last:
            raise MalformedInputError("terms must be strictly increasing")
        last = value
    return out


def _has_progression(seq: Sequence[int], members: set[int]) -> bool:
    # Any 3-term AP in an increasing list appears as terms[k] = 2*terms[j] - terms[i]
    # with i < j, so probing pair sums against the member set is complete.
    for j in range(1, len(seq)):
        doubled = 2 * seq[j]
        for i in range(j):
            if doubled - seq[i] in members:
                return True
    return False


def is_3_free(terms: Sequence[int]) -> bool:
    """True iff no three terms form an arithmetic progression.  O(n^2)."""
    seq = _check_terms(terms)
    return not _has_progression(seq, set(seq))


def is_covered(z: int, terms: Sequence[int]) -> bool:
    """True iff z = 2y - x for some terms x < y.  O(n) with a hash probe."""
    seq = _check_terms(terms)
    members = set(seq)
    for y in seq:
        if y >= z:  # z = 2y - x with x < y forces y < z
            return False
        x = 2 * y - z
        if x < y and x in members:
            return True
    return False


@dataclass(frozen=True)
class StanleyPrefix:
    """A finite greedy prefix: strictly increasing, 3-AP-free terms.

    ``generator_size`` remembers how many leading terms were the seed.
    """

    terms: tuple[int, ...]
    generator_size: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", _check_terms(self.terms))
        if _has_progression(self.terms, set(self.terms)):
            raise MalformedInputError("terms contain a 3-term arithmetic progression")
        if not 1 <= self.generator_size <= len(self.terms):
            raise MalformedInputError(
                f"generator_size {self.generator_size} outside 1..{len(self.terms)}"
            )

    @classmethod
    def from_terms(cls, terms: Iterable[int]) -> "StanleyPrefix":
        seq = tuple(terms)
        return cls(seq, len(seq))

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def last(self) -> int:
        return self.terms[-1]


SeedLike = Union[StanleyPrefix, Sequence[int]]


def _as_prefix(seed: SeedLike) -> StanleyPrefix:
    if isinstance(seed, StanleyPrefix):
        return seed
    return StanleyPrefix.from_terms(seed)


def greedy_extend(seed: SeedLike, target_len: int, *, cap: int = DEFAULT_TERM_CAP) -> StanleyPrefix:
    """Extend ``seed`` greedily until it has ``target_len`` terms.

    Candidates are vetted with a growable table of "covered" integers
    (values 2y - x over pairs x < y already present), so membership tests
    are amortized O(1) and each accepted term costs O(n) updates.
    """
    prefix = _as_prefix(seed)
    if target_len < len(prefix):
        raise MalformedInputError(f"target_len {target_len} below seed length {len(prefix)}")
    if target_len > cap:
        raise ResourceLimitError(f"target_len {target_len} exceeds cap {cap}")
    if target_len == len(prefix):
        return prefix

    terms = list(prefix.terms)
    covered = bytearray(max(2 * terms[-1] + 4, 64))

    def mark(value: int) -> None:
        nonlocal covered
        if value >= len(covered):
            covered.extend(bytes(max(len(covered), value + 1 - len(covered))))
        covered[value] = 1

    for j in range(1, len(terms)):
        doubled = 2 * terms[j]
        for i in range(j):
            mark(doubled - terms[i])

    while len(terms) < target_len:
        candidate = terms[-1] + 1
        while candidate < len(covered) and covered[candidate]:
            candidate += 1
        for x in terms:
            mark(2 * candidate - x)
        terms.append(candidate)

    return StanleyPrefix(tuple(terms), prefix.generator_size)


@dataclass(frozen=True)
class CharacterProfile:
    """Outcome of an empirical doubling-identity scan.

    For every level ``k`` from ``settle_level`` through
    ``verified_up_to_level`` the prefix satisfied both
    ``a[2^k + i] == a[2^k] + a[i]`` (0 <= i < 2^k) and
    ``a[2^k] == 2*a[2^k - 1] - character + 1``.
    """

    character: int
    settle_level: int
    repeat_factor: int
    verified_up_to_level: int

    def __post_init__(self) -> None:
        if self.character < 0:
            raise MalformedInputError("character must be nonnegative")
        if not 0 <= self.settle_level <= self.verified_up_to_level:
            raise MalformedInputError("settle_level outside verified range")

    @property
    def levels_verified(self) -> int:
        return self.verified_up_to_level - self.settle_level + 1


def detect_character(prefix: SeedLike) -> CharacterProfile | None:
    """Scan the doubling identities empirically; None when they never settle.

    Returns the profile with the least settle level such that a single
    character value satisfies both identities on every checkable level from
    there up.  A level ``k`` is checkable when the prefix holds at least
    ``2^(k+1)`` terms.
    """
    terms = _check_terms(prefix.terms if isinstance(prefix, StanleyPrefix) else prefix)
    if len(terms) < 4:
        raise PrefixTooShortError("need at least 4 terms to check one doubling level")
    top = len(terms).bit_length() - 2  # largest k with 2^(k+1) <= len(terms)

    candidates = []
    additive_ok = []
    for k in range(top + 1):
        block = 1 << k
        candidates.append(2 * terms[block - 1] - terms[block] + 1)
        additive_ok.append(all(terms[block + i] == terms[block] + terms[i] for i in range(block)))

    for settle in range(top + 1):
        value = candidates[settle]
        if value < 0:
            continue
        if all(additive_ok[k] and candidates[k] == value for k in range(settle, top + 1)):
            return CharacterProfile(value, settle, terms[1 << settle], top)
    return None


@dataclass(frozen=True)
class OmittedSet:
    """Integers below ``scan_bound`` that are neither terms nor covered."""

    elements: tuple[int, ...]
    omega: int | None
    scan_bound: int


def omitted_set(prefix: SeedLike, bound: int) -> OmittedSet:
    """Collect omitted integers in [0, bound).

    The prefix must reach ``bound`` so that every pair able to cover a value
    below the bound is present; otherwise the answer would be provisional.
    """
    terms = _check_terms(prefix.terms if isinstance(prefix, StanleyPrefix) else prefix)
    if bound < 0:
        raise MalformedInputError("bound must be nonnegative")
    if terms[-1] < bound:
        raise PrefixTooShortError(f"last term {terms[-1]} below scan bound {bound}")

    decided = bytearray(bound)
    for value in terms:
        if value >= bound:
            break
        decided[value] = 1
    for j in range(1, len(terms)):
        y = terms[j]
        if y >= bound:  # 2y - x > y, so later pairs cannot land below bound
            break
        doubled = 2 * y
        for i in range(j):
            z = doubled - terms[i]
            if z < bound:
                decided[z] = 1
    elements = tuple(z for z in range(bound) if not decided[z])
    return OmittedSet(elements, elements[-1] if elements else None, bound)


def growth_diagnostic(prefix: SeedLike) -> tuple[float, float]:
    """Min and max of a_n / n**log2(3) over the prefix's second half."""
    terms = _check_terms(prefix.terms if isinstance(prefix, StanleyPrefix) else prefix)
    if len(terms) < 8:
        raise PrefixTooShortError("need at least 8 terms for a growth window")
    ratios = [terms[n] / n ** _LOG2_3 for n in range(len(terms) // 2, len(terms))]
    return min(ratios), max(ratios)
