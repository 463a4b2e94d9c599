"""Residue-set calculus: verification, products, transforms, and file I/O.

A :class:`ResidueSet` is a finite set of nonnegative integers containing 0,
tagged with a modulus N.  It is *near-modular* when, modulo N, no triple of
elements that are not all identical forms an arithmetic progression and
every residue class is covered by some 2y - x with x <= y.  It is *modular*
when additionally every element lies below N.  Elements of near-modular
sets may exceed the modulus; only their residues matter to verification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, TextIO, Union

from .errors import (
    FormatError,
    InvariantViolationError,
    MalformedInputError,
    NegativeCharacterError,
    PreconditionError,
    ResourceLimitError,
)

#: Checked integer width shared with the sequence layer.
INT_LIMIT = (1 << 63) - 1


def _check_value(value: int, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise MalformedInputError(f"{what} {value!r} is not an integer")
    if value < 0:
        raise MalformedInputError(f"{what} {value} is negative")
    if value > INT_LIMIT:
        raise ResourceLimitError(f"{what} {value} exceeds the checked 64-bit range")
    return value


@dataclass(frozen=True)
class ResidueSet:
    """Ascending element tuple plus modulus; 0 is always a member."""

    modulus: int
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_value(self.modulus, "modulus")
        if self.modulus < 1:
            raise MalformedInputError("modulus must be at least 1")
        elements = tuple(self.elements)
        object.__setattr__(self, "elements", elements)
        if not elements:
            raise MalformedInputError("element list is empty")
        last = -1
        for value in elements:
            _check_value(value, "element")
            if value == last:
                raise MalformedInputError(f"duplicate element {value}")
            if value < last:
                raise MalformedInputError("elements must be sorted ascending")
            last = value
        if elements[0] != 0:
            raise MalformedInputError("0 must be an element")

    @classmethod
    def of(cls, modulus: int, elements: Iterable[int]) -> "ResidueSet":
        """Build from any iterable; duplicates are still rejected."""
        return cls(modulus, tuple(sorted(elements)))

    @property
    def max_element(self) -> int:
        return self.elements[-1]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)


@dataclass(frozen=True)
class VerificationReport:
    is_three_free_mod: bool
    uncovered_residues: tuple[int, ...]
    is_near_modular: bool
    is_modular: bool
    witness_violation: tuple[int, int, int] | None


def is_mod_ap(x: int, y: int, z: int, modulus: int) -> bool:
    """True iff x + z == 2y modulo ``modulus``."""
    if modulus < 1:
        raise MalformedInputError("modulus must be at least 1")
    return (x + z - 2 * y) % modulus == 0


def is_mod_covered(z: int, a: ResidueSet) -> bool:
    """True iff 2y - x lands on z's residue for some elements x <= y."""
    n = a.modulus
    target = z % n
    elements = a.elements
    for i, x in enumerate(elements):
        for y in elements[i:]:
            if (2 * y - x) % n == target:
                return True
    return False


def verify(a: ResidueSet) -> VerificationReport:
    """Full near-modular / modular verdict with a first violating triple.

    A violation is any ordered triple (x, y, z) of elements, not all three
    identical, with x + z == 2y (mod N).  Degenerate triples are screened
    first: two elements sharing a residue, or sharing a doubled residue,
    each yield a violation on their own.
    """
    n = a.modulus
    elements = a.elements
    violation: tuple[int, int, int] | None = None

    by_residue: dict[int, int] = {}
    for e in elements:
        r = e % n
        if r in by_residue:
            other = by_residue[r]
            violation = (other, other, e)  # x = y, z in the same class
            break
        by_residue[r] = e

    if violation is None:
        by_doubled: dict[int, int] = {}
        for e in elements:
            d = (2 * e) % n
            if d in by_doubled:
                violation = (by_doubled[d], e, by_doubled[d])  # x = z, middle y
                break
            by_doubled[d] = e

    if violation is None:
        # Residues are now distinct, so any hit here is a genuine triple.
        for y in elements:
            doubled = 2 * y
            for x in elements:
                if x == y:
                    continue
                z = by_residue.get((doubled - x) % n)
                if z is not None:
                    violation = (x, y, z)
                    break
            if violation is not None:
                break

    covered = bytearray(n)
    for i, x in enumerate(elements):
        for y in elements[i:]:
            covered[(2 * y - x) % n] = 1
    uncovered = tuple(r for r in range(n) if not covered[r])

    three_free = violation is None
    near = three_free and not uncovered
    return VerificationReport(
        is_three_free_mod=three_free,
        uncovered_residues=uncovered,
        is_near_modular=near,
        is_modular=near and a.max_element < n,
        witness_violation=violation,
    )


def product(a: ResidueSet, b: ResidueSet) -> ResidueSet:
    """Combine as {x + N*y : x in A, y in B} with modulus N*M.

    Near-modularity of both inputs makes every sum distinct; a collision
    therefore signals an invalid input and is treated as an invariant
    violation rather than silently deduplicated.
    """
    n = a.modulus
    new_modulus = n * b.modulus
    if new_modulus > INT_LIMIT:
        raise ResourceLimitError(f"product modulus {new_modulus} exceeds the checked range")
    if a.max_element + n * b.max_element > INT_LIMIT:
        raise ResourceLimitError("product element exceeds the checked range")
    sums = sorted(x + n * y for x in a.elements for y in b.elements)
    if len(set(sums)) != len(a.elements) * len(b.elements):
        raise InvariantViolationError(
            "product sums collided; an input set repeats a residue class"
        )
    return ResidueSet(new_modulus, tuple(sums))


def scale(a: ResidueSet, c: int) -> ResidueSet:
    """Multiply every element by c; requires gcd(c, N) = 1."""
    _check_value(c, "scale factor")
    if c < 1:
        raise PreconditionError("scale factor must be positive")
    if math.gcd(c, a.modulus) != 1:
        raise PreconditionError(f"gcd({c}, {a.modulus}) != 1")
    if a.max_element * c > INT_LIMIT:
        raise ResourceLimitError("scaled element exceeds the checked range")
    return ResidueSet(a.modulus, tuple(c * e for e in a.elements))


def shift_max(a: ResidueSet, multiples: int = 1) -> ResidueSet:
    """Raise the largest element by ``multiples`` times the modulus.

    Residues are unchanged, so every verification verdict is preserved;
    only the maximum (and with it the character) moves.
    """
    _check_value(multiples, "multiples")
    if multiples < 1:
        raise PreconditionError("multiples must be positive")
    if a.max_element == 0:
        raise PreconditionError("cannot shift a set whose only element is 0")
    new_max = a.max_element + multiples * a.modulus
    if new_max > INT_LIMIT:
        raise ResourceLimitError("shifted element exceeds the checked range")
    return ResidueSet(a.modulus, a.elements[:-1] + (new_max,))


#: The two-element doubling block used to convert near-modular to modular.
DOUBLING_BLOCK = ResidueSet(3, (0, 1))


def to_modular(a: ResidueSet) -> tuple[ResidueSet, int]:
    """Product with {0,1} mod 3 until the maximum drops below the modulus.

    Each step multiplies the modulus by 3 while adding only the old modulus
    to the maximum, so the loop terminates at the least sufficient step
    count, which is returned alongside the modular set.
    """
    current, steps = a, 0
    while current.max_element >= current.modulus:
        current = product(current, DOUBLING_BLOCK)
        steps += 1
    return current, steps


def character_of(a: ResidueSet) -> int:
    """2*max + 1 - modulus; the character its greedy extension settles on."""
    value = 2 * a.max_element + 1 - a.modulus
    if value < 0:
        raise NegativeCharacterError(
            f"2*{a.max_element} + 1 < {a.modulus}; no nonnegative character"
        )
    return value


# --- set file format -------------------------------------------------------
#
# One set per line:  N=<modulus>; <e1>,<e2>,...,<ek>
# Elements are ascending ASCII decimals; '#' starts a comment line.

def format_set(a: ResidueSet) -> str:
    return f"N={a.modulus}; " + ",".join(str(e) for e in a.elements)


def _parse_number(token: str, line: str) -> int:
    body = token.strip()
    if not body.isdigit() or (len(body) > 1 and body[0] == "0"):
        raise FormatError(f"bad number {token!r} in {line.strip()!r}")
    return int(body)


def parse_set(line: str) -> ResidueSet:
    """Parse one canonical set line (whitespace-tolerant, format-strict)."""
    body = line.strip()
    head, sep, tail = body.partition(";")
    head = "".join(head.split())
    if not sep or not head.startswith("N="):
        raise FormatError(f"expected 'N=<modulus>; <elements>', got {line.strip()!r}")
    modulus = _parse_number(head[2:], line)
    items = tail.split(",")
    if not tail.strip():
        raise FormatError(f"no elements in {line.strip()!r}")
    elements = tuple(_parse_number(item, line) for item in items)
    return ResidueSet(modulus, elements)


def read_sets(lines: Iterable[str]) -> list[ResidueSet]:
    """Parse every non-comment, non-blank line."""
    out = []
    for line in lines:
        body = line.strip()
        if not body or body.startswith("#"):
            continue
        out.append(parse_set(body))
    return out


def load_set_file(source: Union[str, TextIO]) -> list[ResidueSet]:
    if hasattr(source, "read"):
        return read_sets(source.read().splitlines())
    with open(source, "r", encoding="ascii") as handle:
        return read_sets(handle.read().splitlines())
