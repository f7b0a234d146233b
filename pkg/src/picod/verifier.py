"""Decide whether a broadcast code satisfies every user of an instance.

A user that knows the messages in K can decode message d from code X when
the unit vector e_d lies in span(rows of X, {e_a : a in K}).  Decoding is
iterated to a fixpoint, each newly decoded message may unlock further ones.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator

from .coding import LinearCode, gf_rref
from .errors import CapExceeded
from .instance import Assignment, Instance


def decodable_closure(code: LinearCode, known: frozenset[int]) -> frozenset[int]:
    """All messages outside `known` that become decodable, iterated to a fixpoint.

    Projecting the rows onto the unknown columns turns the span test into a
    membership test in the projected row space, where a message is decodable
    exactly when the echelon form contains its unit vector as a row.
    """
    if any(x < 0 or x >= code.m for x in known):
        raise ValueError("known message outside column range")
    have = set(known)
    decoded: set[int] = set()
    while True:
        unknown = [c for c in range(code.m) if c not in have]
        if not unknown:
            break
        projected = [[row[c] for c in unknown] for row in code.rows]
        rref, _ = gf_rref(projected, code.q) if projected else ((), ())
        fresh = {
            unknown[next(i for i, x in enumerate(r) if x)]
            for r in rref
            if sum(1 for x in r if x) == 1
        }
        if not fresh:
            break
        decoded |= fresh
        have |= fresh
    return frozenset(decoded)


@dataclass(frozen=True)
class UserDecoding:
    known: frozenset[int]
    decoded: frozenset[int]


@dataclass(frozen=True)
class DecodabilityReport:
    t: int
    valid: bool
    per_user: tuple[UserDecoding, ...]

    def to_json(self, pretty: bool = False) -> str:
        obj = {
            "valid": self.valid,
            "per_user": [
                {
                    "A": sorted(x + 1 for x in u.known),
                    "B": sorted(x + 1 for x in u.decoded),
                }
                for u in self.per_user
            ],
        }
        return json.dumps(obj, indent=2 if pretty else None)


def _satisfies(code: LinearCode, inst: Instance) -> bool:
    """Validity check with early exit, no report construction."""
    return all(len(decodable_closure(code, a)) >= inst.t for a in inst.users)


def is_valid(code: LinearCode, inst: Instance) -> DecodabilityReport:
    """Closure of every user, and whether each decodes at least t messages."""
    if code.m != inst.m:
        raise ValueError(f"code width {code.m} != instance m {inst.m}")
    per_user = tuple(UserDecoding(a, decodable_closure(code, a)) for a in inst.users)
    valid = all(len(u.decoded) >= inst.t for u in per_user)
    return DecodabilityReport(inst.t, valid, per_user)


def induced_assignment(code: LinearCode, inst: Instance) -> Assignment:
    """The t lexicographically smallest decoded messages of every user.

    Only defined for valid codes; raises ValueError otherwise.
    """
    report = is_valid(code, inst)
    if not report.valid:
        raise ValueError("code does not satisfy every user")
    return tuple(frozenset(sorted(u.decoded)[: inst.t]) for u in report.per_user)


# ---------- exhaustive search over row spaces ----------


def gaussian_binomial(m: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of GF(q)^m."""
    if k < 0 or k > m:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def iter_row_spaces(m: int, ell: int, q: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """One canonical reduced-echelon basis per ell-dimensional row space."""
    if ell == 0:
        yield ()
        return
    for pivots in combinations(range(m), ell):
        pivot_set = set(pivots)
        free = [
            (r, c)
            for r in range(ell)
            for c in range(pivots[r] + 1, m)
            if c not in pivot_set
        ]
        base = [[0] * m for _ in range(ell)]
        for r, p in enumerate(pivots):
            base[r][p] = 1
        for fill in product(range(q), repeat=len(free)):
            rows = [list(row) for row in base]
            for (r, c), v in zip(free, fill):
                rows[r][c] = v
            yield tuple(tuple(row) for row in rows)


DEFAULT_SPACE_CAP = 10**6


def min_linear_length_exhaustive(
    inst: Instance,
    q: int = 2,
    ell_max: int | None = None,
    space_cap: int = DEFAULT_SPACE_CAP,
) -> tuple[int, LinearCode] | None:
    """Smallest number of rows of any valid GF(q) code, by trying every row
    space of each dimension in increasing order.

    Returns (length, witness code) or None when nothing up to ell_max works.
    """
    if ell_max is None:
        ell_max = inst.m
    for ell in range(0, min(ell_max, inst.m) + 1):
        count = gaussian_binomial(inst.m, ell, q)
        if count > space_cap:
            raise CapExceeded(f"row spaces of dimension {ell}", count, space_cap)
        for rows in iter_row_spaces(inst.m, ell, q):
            code = LinearCode(q, inst.m, rows)
            if _satisfies(code, inst):
                return ell, code
    return None
