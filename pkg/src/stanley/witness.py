"""Character coverage: pick a construction for any admissible character, run
it, and machine-check the result.

The dispatcher (`witness_for`) never does heavy work; it only routes a target
character to one of six strategies and records the expected geometry in a
`WitnessRecipe`.  `execute_and_verify` then builds the set and refuses to
return it until it has re-derived every claimed property, optionally all the
way down to a greedy extension of the fully modular form.
"""

from __future__ import annotations

import importlib.resources
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .core import (
    CharacterProfile,
    OmittedSet,
    detect_character,
    greedy_extend,
    omitted_set,
)
from .errors import (
    BudgetExceededError,
    ForbiddenCharacterError,
    FormatError,
    InvariantViolationError,
    MalformedInputError,
    NegativeCharacterError,
    PreconditionError,
    StanleyError,
    VerificationError,
)
from .families import FamilyId, build_family
from .modset import (
    ResidueSet,
    character_of,
    format_set,
    parse_set,
    shift_max,
    to_modular,
    verify,
)
from .search import SearchSpec, search_near_modular

#: No sequence with the doubling structure attains these six characters.
FORBIDDEN_CHARACTERS = frozenset({1, 3, 5, 9, 11, 15})

STRATEGIES = (
    "trivial-zero",
    "even-ladder",
    "mod60-family",
    "mod28-table",
    "mod30-table",
    "small-case-search",
)

DEFAULT_DEEP_CAP = 100_000


@dataclass(frozen=True)
class TableRef:
    """Pointer into a bundled table: the row mod ``modulus`` whose top
    element is ``max_element``."""

    modulus: int
    max_element: int

    def __post_init__(self) -> None:
        if self.modulus not in (28, 30):
            raise MalformedInputError(f"no bundled table mod {self.modulus}")


BaseSpec = Union[FamilyId, TableRef, SearchSpec, ResidueSet]


@dataclass(frozen=True)
class WitnessRecipe:
    """How to reach one character: a base set plus top-element shifts.

    Every shift raises the top element by one modulus and hence the
    character by two, so the target pins the expected geometry exactly;
    ``2*expected_max + 1 - expected_modulus == target_character`` is
    enforced here so a dispatch bug cannot survive construction.
    """

    target_character: int
    strategy: str
    base: BaseSpec
    shift_count: int = 0
    expected_max: int = 0
    expected_modulus: int = 1

    def __post_init__(self) -> None:
        if self.strategy not in STRATEGIES:
            raise MalformedInputError(f"unknown strategy {self.strategy!r}")
        if self.shift_count < 0:
            raise MalformedInputError("shift_count must be nonnegative")
        if 2 * self.expected_max + 1 - self.expected_modulus != self.target_character:
            raise InvariantViolationError(
                f"recipe geometry off: 2*{self.expected_max}+1-{self.expected_modulus}"
                f" != {self.target_character}"
            )


#: character -> (modulus, cardinality) for the odd values below the table
#: bands.  Frozen output of the bundled search itself (cardinality 4 then 8,
#: even moduli ascending), kept literal so dispatch stays deterministic; the
#: executor re-runs the search and re-verifies the hit every time.
SMALL_CASE_PARAMS: dict[int, tuple[int, int]] = {
    7: (10, 4),
    13: (30, 8),
    17: (28, 8),
    19: (10, 4),
    21: (30, 8),
    23: (10, 4),
    25: (32, 8),
    27: (10, 4),
    29: (30, 8),
    31: (28, 8),
    33: (30, 8),
    35: (10, 4),
    37: (28, 8),
    39: (10, 4),
    41: (30, 8),
    43: (10, 4),
    45: (30, 8),
    47: (10, 4),
    49: (28, 8),
    51: (28, 8),
    53: (30, 8),
    55: (10, 4),
    57: (30, 8),
    59: (10, 4),
    61: (28, 8),
}


def _split_pow3(n: int) -> tuple[int, int]:
    """n = cofactor * 3**exponent with 3 not dividing cofactor."""
    exponent = 0
    while n % 3 == 0:
        n //= 3
        exponent += 1
    return exponent, n


def _table_recipe(target: int, table_modulus: int) -> WitnessRecipe:
    # top = (target-1)/2 + N/2 makes 2*top+1-N == target; the bundled rows
    # cover one full residue band of tops, so shifting down by whole moduli
    # always lands on a row.
    top = (target - 1) // 2 + table_modulus // 2
    r = top % table_modulus
    if table_modulus == 28:
        base_top = 56 + r  # r is never 0 or 14 for targets routed here
    else:
        base_top = 30 + r if r >= 16 else 60 + r  # r is never 0 or 15
    return WitnessRecipe(
        target,
        f"mod{table_modulus}-table",
        TableRef(table_modulus, base_top),
        (top - base_top) // table_modulus,
        top,
        table_modulus,
    )


def witness_for(target: int) -> WitnessRecipe:
    """Pick a construction recipe for the given character.

    Raises ForbiddenCharacterError for the six unattainable values and
    NegativeCharacterError below zero.  Every other nonnegative integer
    gets a recipe; running it through `execute_and_verify` is what turns
    the claim into a checked fact.
    """
    if isinstance(target, bool) or not isinstance(target, int):
        raise MalformedInputError(f"character must be an integer, got {target!r}")
    if target < 0:
        raise NegativeCharacterError(f"no sequence has character {target}")
    if target in FORBIDDEN_CHARACTERS:
        raise ForbiddenCharacterError(f"character {target} is unattainable")

    if target == 0:
        return WitnessRecipe(0, "trivial-zero", ResidueSet(1, (0,)), 0, 0, 1)

    if target % 2 == 0:
        # (2k-3)*3**(t-1) + 1 sweeps every even value exactly once over the
        # ladder k >= 2, 3 not dividing k.
        exponent, m = _split_pow3(target - 1)
        k = (m + 3) // 2
        return WitnessRecipe(
            target,
            "even-ladder",
            FamilyId("Atk", (exponent + 1, k)),
            0,
            k * 3**exponent,
            3 ** (exponent + 1),
        )

    if target % 30 == 1:
        n, u = _split_pow3((target - 1) // 10)  # n >= 1 here
        if u not in (1, 2):
            letter = {1: "C", 2: "D", 4: "E", 5: "F"}[u % 6]
            start = {"C": 7, "D": 8, "E": 4, "F": 5}[letter]
            base_top = {"C": 50, "D": 55, "E": 35, "F": 40}[letter] * 3**n
            shifts = (u - start) // 6
            modulus = 10 * 3 ** (n + 1)
            return WitnessRecipe(
                target,
                "mod60-family",
                FamilyId(letter, (n,)),
                shifts,
                base_top + shifts * modulus,
                modulus,
            )
        if target >= 87:
            # 10*3**n + 1 and 20*3**n + 1 never collide with the two top
            # residues the mod-28 table is missing.
            return _table_recipe(target, 28)
        # targets 31 and 61 fall through to the small-case search
    elif target >= 63:
        return _table_recipe(target, 30)

    if target in SMALL_CASE_PARAMS:
        modulus, cardinality = SMALL_CASE_PARAMS[target]
        top = (modulus + target - 1) // 2
        return WitnessRecipe(
            target,
            "small-case-search",
            SearchSpec(modulus, top, cardinality),
            0,
            top,
            modulus,
        )

    raise InvariantViolationError(f"dispatch gap at character {target}")


# ---------------------------------------------------------------------------
# bundled tables


@dataclass(frozen=True)
class ErratumEntry:
    """One bundled-table row that needed intervention at load time."""

    modulus: int
    max_element: int
    note: str  # flag text from the data file, describing the defect
    row: tuple[int, ...]  # elements actually served
    resolution: str  # "natural-reading-verified" | "search-replacement"


#: exact top-element bands the dispatcher's arithmetic relies on
_EXPECTED_TOPS = {
    28: tuple(x for x in range(57, 84) if x != 70),
    30: tuple(x for x in range(46, 75) if x != 60),
}


def _resolve_erratum(candidate: ResidueSet, note: str) -> tuple[ResidueSet, ErratumEntry]:
    """Keep a flagged row if it verifies as-is, else search for a stand-in
    with the same modulus, top element and cardinality."""
    if verify(candidate).is_near_modular:
        entry = ErratumEntry(
            candidate.modulus,
            candidate.max_element,
            note,
            candidate.elements,
            "natural-reading-verified",
        )
        return candidate, entry
    spec = SearchSpec(candidate.modulus, candidate.max_element, len(candidate))
    result = search_near_modular(spec)
    if result.status != "found" or result.witness is None:
        raise VerificationError(
            "appendix",
            f"no replacement row mod {candidate.modulus} with top {candidate.max_element}",
        )
    entry = ErratumEntry(
        candidate.modulus,
        candidate.max_element,
        note,
        result.witness.elements,
        "search-replacement",
    )
    return result.witness, entry


def _read_table(name: str, modulus: int) -> tuple[list[ResidueSet], list[ErratumEntry]]:
    text = (importlib.resources.files("stanley") / "data" / name).read_text("ascii")
    rows: list[ResidueSet] = []
    errata: list[ErratumEntry] = []
    note: list[str] | None = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            note = None
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("erratum:"):
                note = [body[len("erratum:") :].strip()]
            elif note is not None:
                note.append(body)  # continuation of a flag comment
            continue
        row = parse_set(line)
        if row.modulus != modulus:
            raise FormatError(f"{name}: expected modulus {modulus}, got {row.modulus}")
        if note is not None:
            row, entry = _resolve_erratum(row, " ".join(note))
            errata.append(entry)
            note = None
        rows.append(row)
    return rows, errata


@dataclass(frozen=True)
class AppendixTables:
    """The two bundled witness tables plus any load-time interventions."""

    mod28: tuple[ResidueSet, ...]
    mod30: tuple[ResidueSet, ...]
    errata: tuple[ErratumEntry, ...]

    def row(self, modulus: int, max_element: int) -> ResidueSet:
        rows = {28: self.mod28, 30: self.mod30}.get(modulus)
        if rows is None:
            raise PreconditionError(f"no bundled table mod {modulus}")
        for candidate in rows:
            if candidate.max_element == max_element:
                return candidate
        raise PreconditionError(f"no row mod {modulus} with top {max_element}")


@lru_cache(maxsize=1)
def load_appendix() -> AppendixTables:
    """Parse the bundled tables once, resolving any flagged rows."""
    mod28, errata28 = _read_table("mod28.txt", 28)
    mod30, errata30 = _read_table("mod30.txt", 30)
    return AppendixTables(tuple(mod28), tuple(mod30), tuple(errata28 + errata30))


@dataclass(frozen=True)
class AppendixReport:
    rows_mod28: int
    rows_mod30: int
    errata: tuple[ErratumEntry, ...]


def appendix_check() -> AppendixReport:
    """Audit every bundled row: band structure, near-modularity, character.

    The dispatcher's shift arithmetic assumes each table carries exactly one
    row per admissible top residue, so the bands are checked literally.
    """
    tables = load_appendix()
    for modulus, rows in ((28, tables.mod28), (30, tables.mod30)):
        tops = tuple(row.max_element for row in rows)
        if tops != _EXPECTED_TOPS[modulus]:
            raise VerificationError(
                "appendix", f"mod {modulus} table tops {tops} break the expected band"
            )
        for row in rows:
            if not verify(row).is_near_modular:
                raise VerificationError("near-modular", f"table row {format_set(row)}")
            if character_of(row) != 2 * row.max_element + 1 - modulus:
                raise VerificationError("character", f"table row {format_set(row)}")
    return AppendixReport(len(tables.mod28), len(tables.mod30), tables.errata)


# ---------------------------------------------------------------------------
# execution


@dataclass(frozen=True)
class VerifiedWitness:
    """A recipe's output set together with everything checked about it."""

    recipe: WitnessRecipe
    witness: ResidueSet
    character: int
    checks: tuple[str, ...]
    search_nodes: int = 0
    modular_form: ResidueSet | None = None
    doubling_steps: int | None = None
    profile: CharacterProfile | None = None
    omitted: OmittedSet | None = None

    @property
    def deep_verified(self) -> bool:
        return self.profile is not None


def _resolve_base(recipe: WitnessRecipe) -> tuple[ResidueSet, int]:
    base = recipe.base
    if isinstance(base, ResidueSet):
        return base, 0
    if isinstance(base, FamilyId):
        return build_family(base), 0
    if isinstance(base, TableRef):
        return load_appendix().row(base.modulus, base.max_element), 0
    if isinstance(base, SearchSpec):
        result = search_near_modular(base)
        if result.status == "budget_exceeded":
            raise BudgetExceededError(
                f"search for character {recipe.target_character} ran out of budget",
                result.nodes,
            )
        if result.status != "found" or result.witness is None:
            raise VerificationError(
                "search", f"space exhausted for character {recipe.target_character}"
            )
        return result.witness, result.nodes
    raise MalformedInputError(f"unsupported recipe base {base!r}")


def _reduced_modulus(witness: ResidueSet) -> int:
    """Modulus the doubling reduction will end at, without building it."""
    top, modulus = witness.max_element, witness.modulus
    while top >= modulus:
        top, modulus = top + modulus, 3 * modulus
    return modulus


def execute_and_verify(
    recipe: WitnessRecipe,
    *,
    deep: bool = False,
    deep_cap: int = DEFAULT_DEEP_CAP,
) -> VerifiedWitness:
    """Build the recipe's set and refuse to hand it over unchecked.

    Static checks always run: near-modularity, the expected top element and
    modulus, and the character itself.  With ``deep`` the set is doubled
    down to a fully modular form, extended greedily to four times its size,
    and the observed doubling structure (at least two levels) plus the
    omitted-value bound are checked against the target; a reduction whose
    modulus would exceed ``deep_cap`` skips the deep phase instead of
    thrashing.  Any failed check raises VerificationError.
    """
    base, nodes = _resolve_base(recipe)
    witness = shift_max(base, recipe.shift_count) if recipe.shift_count else base
    checks: list[str] = []

    report = verify(witness)
    if not report.is_near_modular:
        raise VerificationError(
            "near-modular", f"{format_set(witness)} violates {report.witness_violation}"
        )
    checks.append("near-modular")
    if witness.max_element != recipe.expected_max:
        raise VerificationError(
            "max-element", f"expected {recipe.expected_max}, got {witness.max_element}"
        )
    checks.append("max-element")
    if witness.modulus != recipe.expected_modulus:
        raise VerificationError(
            "modulus", f"expected {recipe.expected_modulus}, got {witness.modulus}"
        )
    checks.append("modulus")
    character = character_of(witness)
    if character != recipe.target_character:
        raise VerificationError(
            "character", f"expected {recipe.target_character}, got {character}"
        )
    checks.append("character")

    modular_form = None
    doubling_steps = None
    profile = None
    omitted = None
    if deep and _reduced_modulus(witness) <= deep_cap:
        modular_form, doubling_steps = to_modular(witness)
        prefix = greedy_extend(modular_form.elements, 4 * len(modular_form))
        profile = detect_character(prefix)
        if profile is None or profile.character != recipe.target_character:
            raise VerificationError(
                "doubling-structure",
                f"greedy extension of {format_set(modular_form)} does not repeat"
                f" with character {recipe.target_character} (got {profile})",
            )
        if profile.levels_verified < 2:
            raise VerificationError(
                "doubling-structure", "fewer than two doubled levels verified"
            )
        checks.append("doubling-structure")
        omitted = omitted_set(prefix, prefix.last)
        if omitted.omega is not None and omitted.omega >= recipe.target_character:
            raise VerificationError(
                "omitted-bound",
                f"largest omitted value {omitted.omega} reaches the character"
                f" {recipe.target_character}",
            )
        checks.append("omitted-bound")

    return VerifiedWitness(
        recipe,
        witness,
        character,
        tuple(checks),
        nodes,
        modular_form,
        doubling_steps,
        profile,
        omitted,
    )


# ---------------------------------------------------------------------------
# coverage sweeps


def _describe_base(base: BaseSpec) -> str:
    if isinstance(base, FamilyId):
        return str(base)
    if isinstance(base, TableRef):
        return f"table mod {base.modulus} top {base.max_element}"
    if isinstance(base, SearchSpec):
        return f"search mod {base.modulus} top {base.max_element} size {base.cardinality}"
    return format_set(base)


@dataclass(frozen=True)
class CoverageEntry:
    """One character's row in a coverage sweep."""

    character: int
    status: str  # "verified" | "excluded" | "failed"
    strategy: str | None = None
    base: str | None = None
    max_element: int | None = None
    modulus: int | None = None
    deep_verified: bool = False
    doubling_levels: int | None = None
    omega: int | None = None
    detail: str | None = None


def _coverage_entry(args: tuple[int, bool, int]) -> CoverageEntry:
    target, deep, deep_cap = args
    if target in FORBIDDEN_CHARACTERS:
        return CoverageEntry(target, "excluded")
    recipe = witness_for(target)
    try:
        result = execute_and_verify(recipe, deep=deep, deep_cap=deep_cap)
    except StanleyError as exc:
        return CoverageEntry(
            target,
            "failed",
            recipe.strategy,
            _describe_base(recipe.base),
            detail=str(exc),
        )
    return CoverageEntry(
        target,
        "verified",
        recipe.strategy,
        _describe_base(recipe.base),
        result.witness.max_element,
        result.witness.modulus,
        result.deep_verified,
        result.profile.levels_verified if result.profile else None,
        result.omitted.omega if result.omitted else None,
    )


@dataclass(frozen=True)
class CoverageReport:
    """Outcome of sweeping every character in 0..lambda_max."""

    lambda_max: int
    deep_cap: int
    entries: tuple[CoverageEntry, ...]

    def count(self, status: str) -> int:
        return sum(1 for e in self.entries if e.status == status)

    @property
    def all_admissible_verified(self) -> bool:
        return all(e.status in ("verified", "excluded") for e in self.entries)

    def summary_line(self) -> str:
        return (
            f"characters 0..{self.lambda_max}: {self.count('verified')} verified,"
            f" {self.count('excluded')} excluded, {self.count('failed')} failed"
        )

    def to_text_lines(self) -> list[str]:
        lines = [
            f"{'char':>5}  {'status':<8}  {'strategy':<17}  "
            f"{'base':<30}  {'max':>7}  {'mod':>5}  {'lvl':>3}  {'omega':>5}"
        ]
        for e in self.entries:
            if e.status == "excluded":
                lines.append(f"{e.character:>5}  excluded")
                continue
            levels = "-" if e.doubling_levels is None else str(e.doubling_levels)
            omega = "-" if e.omega is None else str(e.omega)
            top = "-" if e.max_element is None else str(e.max_element)
            modulus = "-" if e.modulus is None else str(e.modulus)
            lines.append(
                f"{e.character:>5}  {e.status:<8}  {e.strategy:<17}  "
                f"{e.base:<30}  {top:>7}  {modulus:>5}  {levels:>3}  {omega:>5}"
            )
        lines.append(self.summary_line())
        return lines

    def to_json_dict(self) -> dict:
        return {
            "lambda_max": self.lambda_max,
            "deep_cap": self.deep_cap,
            "verified": self.count("verified"),
            "excluded": self.count("excluded"),
            "failed": self.count("failed"),
            "entries": [
                {
                    "character": e.character,
                    "status": e.status,
                    "strategy": e.strategy,
                    "base": e.base,
                    "max_element": e.max_element,
                    "modulus": e.modulus,
                    "deep_verified": e.deep_verified,
                    "doubling_levels": e.doubling_levels,
                    "omega": e.omega,
                    "detail": e.detail,
                }
                for e in self.entries
            ],
        }


def coverage_report(
    lambda_max: int,
    *,
    deep: bool = True,
    deep_cap: int = DEFAULT_DEEP_CAP,
    threads: int = 1,
) -> CoverageReport:
    """Sweep characters 0..lambda_max and verify a witness for each
    admissible one.  Entries come back ordered by character regardless of
    ``threads``."""
    if lambda_max < 16:
        raise PreconditionError("lambda_max must be at least 16")
    if threads < 1:
        raise MalformedInputError("threads must be positive")
    jobs = [(target, deep, deep_cap) for target in range(lambda_max + 1)]
    if threads == 1:
        entries = [_coverage_entry(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            entries = list(pool.map(_coverage_entry, jobs, chunksize=8))
    return CoverageReport(lambda_max, deep_cap, tuple(entries))
