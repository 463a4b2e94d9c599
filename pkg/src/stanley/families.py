"""Builders for the named product-construction families.

Everything here is assembled from four elementary near-modular blocks with
``product``, ``scale`` and ``shift_max``; the letter names (T, Acal, At,
C..F, ...) are the stable addressing scheme used by the CLI and the
witness recipes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import InvariantViolationError, MalformedInputError, PreconditionError
from .modset import ResidueSet, product, scale, shift_max, verify

#: Elementary blocks.  All four are verified near-modular at import time.
UNIT = ResidueSet(1, (0,))
SEED_01 = ResidueSet(3, (0, 1))
SEED_02 = ResidueSet(3, (0, 2))
MOD10_A = ResidueSet(10, (0, 7, 9, 16))
MOD10_B = ResidueSet(10, (0, 1, 7, 8))

#: The repeated factor of the T family: {0,1,6,7} mod 9.
BLOCK = product(SEED_01, SEED_02)

for _seed in (SEED_01, SEED_02, MOD10_A, MOD10_B, BLOCK):
    if not verify(_seed).is_near_modular:  # pragma: no cover - constant data
        raise InvariantViolationError(f"elementary block {_seed} failed verification")
del _seed


def build_T(n: int) -> ResidueSet:
    """n-fold product of {0,1,6,7} mod 9; modulus 9**n, 4**n elements."""
    if n < 0:
        raise MalformedInputError("T requires n >= 0")
    out = UNIT
    for _ in range(n):
        out = product(out, BLOCK)
    return out


def build_Ttilde(n: int) -> ResidueSet:
    """T_n widened by a doubling block: modulus 3**(2n+1)."""
    return product(build_T(n), SEED_01)


def _swap_pivot(base: ResidueSet, pivot: int) -> ResidueSet:
    """Replace ``pivot`` by ``2*pivot``; lifts the max above the old one."""
    if pivot not in base.elements:
        raise InvariantViolationError(f"pivot {pivot} missing from {base}")
    kept = tuple(e for e in base.elements if e != pivot)
    return ResidueSet.of(base.modulus, kept + (2 * pivot,))


def build_Acal(n: int) -> ResidueSet:
    """Modular set mod 3**(2n+1) with 2*4**n elements and max 2*9**n."""
    if n < 0:
        raise MalformedInputError("Acal requires n >= 0")
    return _swap_pivot(build_Ttilde(n), 3 ** (2 * n))


def build_U(n: int) -> ResidueSet:
    """{0,2} stacked under n-1 copies of the T block; modulus 3**(2n-1)."""
    if n < 1:
        raise MalformedInputError("U requires n >= 1")
    out = SEED_02
    for _ in range(n - 1):
        out = product(out, BLOCK)
    return out


def build_Utilde(n: int) -> ResidueSet:
    """U_n widened by a doubling block: modulus 3**(2n)."""
    return product(build_U(n), SEED_01)


def build_Bcal(n: int) -> ResidueSet:
    """Modular set mod 3**(2n) with 4**n elements and max 2*3**(2n-1)."""
    if n < 1:
        raise MalformedInputError("Bcal requires n >= 1")
    return _swap_pivot(build_Utilde(n), 3 ** (2 * n - 1))


def build_At(t: int) -> ResidueSet:
    """The Acal/Bcal ladder by modulus exponent: modular mod 3**t,
    2**t elements, max 2*3**(t-1)."""
    if t < 1:
        raise MalformedInputError("At requires t >= 1")
    if t % 2:
        return build_Acal((t - 1) // 2)
    return build_Bcal(t // 2)


def build_Atk(t: int, k: int) -> ResidueSet:
    """Near-modular mod 3**t with max k*3**(t-1), for k >= 2, 3 not | k.

    k = 2 is the base set, k = 4 its doubling by scale 2, and every +3 in
    k is one modulus added onto the maximum.
    """
    if t < 1:
        raise MalformedInputError("Atk requires t >= 1")
    if k < 2:
        raise PreconditionError("Atk requires k >= 2")
    if k % 3 == 0:
        raise PreconditionError("Atk requires k not divisible by 3")
    if k % 3 == 2:
        base, start = build_At(t), 2
    else:
        base, start = scale(build_At(t), 2), 4
    steps = (k - start) // 3
    return shift_max(base, steps) if steps else base


R_VARIANTS = ("plain", "prime", "doubleprime", "tripleprime")


def build_R(n: int, variant: str = "plain") -> ResidueSet:
    """Near-modular mod 3**(n+1) with max (2|7|11|16)*3**n by variant."""
    if n < 0:
        raise MalformedInputError("R requires n >= 0")
    base = build_At(n + 1)
    if variant == "plain":
        return base
    if variant == "prime":
        return shift_max(scale(base, 2), 1)
    if variant == "doubleprime":
        return shift_max(base, 3)
    if variant == "tripleprime":
        return scale(base, 8)
    raise MalformedInputError(f"unknown R variant {variant!r}")


def build_CDEF(n: int, which: str) -> ResidueSet:
    """Near-modular mod 10*3**(n+1) with max (50|55|35|40)*3**n.

    C and D widen the plain and prime R variants by {0,7,9,16} mod 10;
    E and F widen the doubleprime and tripleprime variants by {0,1,7,8}.
    """
    if n < 0:
        raise MalformedInputError("C/D/E/F require n >= 0")
    table = {
        "C": ("plain", MOD10_A),
        "D": ("prime", MOD10_A),
        "E": ("doubleprime", MOD10_B),
        "F": ("tripleprime", MOD10_B),
    }
    if which not in table:
        raise MalformedInputError(f"unknown family letter {which!r}")
    variant, widener = table[which]
    return product(build_R(n, variant), widener)


#: name -> (parameter count, builder)
_FAMILY_BUILDERS = {
    "T": (1, build_T),
    "Ttilde": (1, build_Ttilde),
    "Acal": (1, build_Acal),
    "U": (1, build_U),
    "Utilde": (1, build_Utilde),
    "Bcal": (1, build_Bcal),
    "At": (1, build_At),
    "Atk": (2, build_Atk),
    "C": (1, lambda n: build_CDEF(n, "C")),
    "D": (1, lambda n: build_CDEF(n, "D")),
    "E": (1, lambda n: build_CDEF(n, "E")),
    "F": (1, lambda n: build_CDEF(n, "F")),
}

FAMILY_NAMES = tuple(_FAMILY_BUILDERS)


@dataclass(frozen=True)
class FamilyId:
    """A family letter plus its integer parameters, e.g. Atk:3,7."""

    name: str
    params: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.name not in _FAMILY_BUILDERS:
            raise MalformedInputError(f"unknown family {self.name!r}")
        arity = _FAMILY_BUILDERS[self.name][0]
        params = tuple(self.params)
        object.__setattr__(self, "params", params)
        if len(params) != arity:
            raise MalformedInputError(
                f"family {self.name} takes {arity} parameter(s), got {len(params)}"
            )
        for value in params:
            if isinstance(value, bool) or not isinstance(value, int):
                raise MalformedInputError(f"family parameter {value!r} is not an integer")

    def __str__(self) -> str:
        return f"{self.name}:" + ",".join(str(p) for p in self.params)


def parse_family(text: str) -> FamilyId:
    """Parse 'Name:p1,p2,...' as printed by str(FamilyId)."""
    name, sep, tail = text.strip().partition(":")
    if not sep:
        raise MalformedInputError(f"expected 'Name:params', got {text!r}")
    try:
        params = tuple(int(p.strip()) for p in tail.split(","))
    except ValueError:
        raise MalformedInputError(f"bad family parameters in {text!r}") from None
    return FamilyId(name.strip(), params)


def build_family(family: Union[FamilyId, str]) -> ResidueSet:
    fid = parse_family(family) if isinstance(family, str) else family
    return _FAMILY_BUILDERS[fid.name][1](*fid.params)
