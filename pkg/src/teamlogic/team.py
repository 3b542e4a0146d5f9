"""Valuations, teams, projection, amalgamation and team-file I/O.

A valuation over an ordered domain ``(x_0, ..., x_{n-1})`` is encoded as the
integer whose bit ``i`` is the value of ``x_i``. A team is the bitmask over
those codes. Rows in team files are written in domain order, so the row
``"10"`` over ``(p, q)`` is ``p=1, q=0`` with code 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import lattice
from .config import DEFAULT_CAPS, CapExceeded
from .formula import is_identifier

VarSet = tuple[str, ...]


def check_domain(domain: Sequence[str]) -> VarSet:
    domain = tuple(domain)
    if len(set(domain)) != len(domain):
        raise ValueError(f"duplicate variables in domain {domain}")
    for v in domain:
        if not is_identifier(v):
            raise ValueError(f"invalid variable name {v!r}")
    return domain


def code_of(bits: str) -> int:
    return sum(1 << i for i, b in enumerate(bits) if b == "1")


def bits_of(code: int, n: int) -> str:
    return "".join("1" if code >> i & 1 else "0" for i in range(n))


def members_of(mask: int) -> list[int]:
    out = []
    c = 0
    while mask:
        if mask & 1:
            out.append(c)
        mask >>= 1
        c += 1
    return out


@dataclass(frozen=True)
class Valuation:
    domain: VarSet
    code: int

    def __getitem__(self, var: str) -> int:
        return self.code >> self.domain.index(var) & 1

    @property
    def bits(self) -> str:
        return bits_of(self.code, len(self.domain))

    def __str__(self):
        return self.bits


@dataclass(frozen=True)
class Team:
    domain: VarSet
    mask: int

    def __post_init__(self):
        object.__setattr__(self, "domain", tuple(self.domain))
        if self.mask < 0 or self.mask >> (1 << len(self.domain)):
            raise ValueError("team mask out of range for domain")

    @classmethod
    def from_codes(cls, domain: Sequence[str], codes: Iterable[int]) -> Team:
        mask = 0
        for c in codes:
            mask |= 1 << c
        return cls(check_domain(domain), mask)

    @classmethod
    def from_rows(cls, domain: Sequence[str], rows: Iterable[str]) -> Team:
        domain = check_domain(domain)
        codes = []
        for r in rows:
            if len(r) != len(domain) or set(r) - {"0", "1"}:
                raise ValueError(f"row {r!r} does not match domain {domain}")
            codes.append(code_of(r))
        return cls.from_codes(domain, codes)

    @classmethod
    def full(cls, domain: Sequence[str]) -> Team:
        domain = check_domain(domain)
        return cls(domain, (1 << (1 << len(domain))) - 1)

    @property
    def codes(self) -> list[int]:
        return members_of(self.mask)

    def rows(self) -> list[str]:
        return [bits_of(c, len(self.domain)) for c in self.codes]

    def valuations(self) -> Iterator[Valuation]:
        for c in self.codes:
            yield Valuation(self.domain, c)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, v: Valuation | int) -> bool:
        code = v.code if isinstance(v, Valuation) else v
        return bool(self.mask >> code & 1)

    def __iter__(self):
        return self.valuations()

    def _same(self, other: Team) -> None:
        if other.domain != self.domain:
            raise ValueError("teams over different domains")

    def __or__(self, other: Team) -> Team:
        self._same(other)
        return Team(self.domain, self.mask | other.mask)

    def __and__(self, other: Team) -> Team:
        self._same(other)
        return Team(self.domain, self.mask & other.mask)

    def __le__(self, other: Team) -> bool:
        self._same(other)
        return self.mask & ~other.mask == 0

    def __str__(self):
        return "{" + ", ".join(self.rows()) + "}"


def project_code(code: int, domain: VarSet, target: VarSet) -> int:
    out = 0
    for j, v in enumerate(target):
        out |= (code >> domain.index(v) & 1) << j
    return out


def restrict(X: Team, M: Sequence[str]) -> Team:
    """Project every valuation of ``X`` onto ``M`` (a subsequence of the domain)."""
    M = check_domain(M)
    missing = set(M) - set(X.domain)
    if missing:
        raise ValueError(f"variables {sorted(missing)} not in the team's domain")
    return Team.from_codes(M, (project_code(c, X.domain, M) for c in X.codes))


class AmalgamationError(ValueError):
    def __init__(self, witness: Valuation):
        self.witness = witness
        super().__init__(f"projections to the shared domain differ at {witness}")


def amalgamate(X: Team, Y: Team) -> Team:
    """Maximal amalgam over ``K + (M - K)`` of teams agreeing on ``K & M``."""
    K, M = X.domain, Y.domain
    shared = tuple(v for v in K if v in M)
    xs = restrict(X, shared)
    ys = restrict(Y, shared)
    if xs.mask != ys.mask:
        diff = xs.mask ^ ys.mask
        raise AmalgamationError(Valuation(shared, (diff & -diff).bit_length() - 1))
    union = K + tuple(v for v in M if v not in K)
    codes = []
    for cx in X.codes:
        for cy in Y.codes:
            if project_code(cx, K, shared) != project_code(cy, M, shared):
                continue
            code = cx
            for v in M:
                if v not in K:
                    code |= (cy >> M.index(v) & 1) << union.index(v)
            codes.append(code)
    return Team.from_codes(union, codes)


def team_count(n: int) -> int:
    return 1 << (1 << n)


def enumerate_teams(N: Sequence[str], filter=None, max_size: int | None = None,
                    mode: str = "lax", caps=DEFAULT_CAPS) -> Iterator[Team]:
    """All teams over ``N`` in increasing bitmask order."""
    N = check_domain(N)
    if len(N) > caps.eval_vars:
        raise CapExceeded(f"|N| = {len(N)} exceeds the enumeration cap {caps.eval_vars}")
    total = team_count(len(N))
    if filter is not None:
        from .semantics import models  # local import: semantics builds on team
        table = models(filter, N, mode, caps=caps)
        masks = np.flatnonzero(table)
    else:
        masks = range(total)
    for mask in masks:
        mask = int(mask)
        if max_size is not None and bin(mask).count("1") > max_size:
            continue
        yield Team(N, mask)


# ------------------------------------------------------------ team files

def parse_team(text: str) -> Team:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ValueError("team file has no header line")
    domain = check_domain(lines[0].split())
    return Team.from_rows(domain, [ln.replace(" ", "") for ln in lines[1:]])


def load_team(path: str | Path) -> Team:
    return parse_team(Path(path).read_text())


def format_team(X: Team) -> str:
    return "\n".join([" ".join(X.domain)] + X.rows()) + "\n"


def dump_team(X: Team, path: str | Path) -> None:
    Path(path).write_text(format_team(X))


# ---------------------------------------------------------- team properties

class TeamProperty:
    """A set of teams over a fixed domain, stored as a boolean table.

    ``table[mask]`` tells whether the team with that bitmask belongs to the
    property. Closure checks run on the whole lattice at once.
    """

    def __init__(self, domain: Sequence[str], table: np.ndarray):
        self.domain = check_domain(domain)
        table = np.asarray(table, dtype=bool)
        if table.shape != (team_count(len(self.domain)),):
            raise ValueError("table size does not match the domain")
        self.table = table

    @classmethod
    def from_masks(cls, domain: Sequence[str], masks: Iterable[int]) -> TeamProperty:
        domain = check_domain(domain)
        table = np.zeros(team_count(len(domain)), dtype=bool)
        for m in masks:
            table[m] = True
        return cls(domain, table)

    @property
    def masks(self) -> list[int]:
        return [int(m) for m in np.flatnonzero(self.table)]

    @property
    def teams(self) -> list[Team]:
        return [Team(self.domain, m) for m in self.masks]

    def __contains__(self, X: Team | int) -> bool:
        mask = X.mask if isinstance(X, Team) else X
        return bool(self.table[mask])

    def __len__(self):
        return int(self.table.sum())

    def __eq__(self, other):
        return (isinstance(other, TeamProperty) and self.domain == other.domain
                and bool(np.array_equal(self.table, other.table)))

    def __repr__(self):
        return f"TeamProperty({self.domain}, {len(self)} teams)"

    @property
    def m(self) -> int:
        return 1 << len(self.domain)

    # each checker returns None when the property holds, else a witness tuple

    def empty_team_witness(self):
        return None if self.table[0] else (Team(self.domain, 0),)

    def union_witness(self):
        closure = lattice.union_product(self.table, self.table)
        bad = closure & ~self.table
        if not bad.any():
            return None
        sizes = lattice.popcounts(self.m)
        cand = np.flatnonzero(bad)
        z = int(cand[np.lexsort((cand, sizes[cand]))[0]])
        for y in members_of_sub(z):
            if not self.table[y]:
                continue
            for w in members_of_sub(z):
                if self.table[w] and y | w == z:
                    return (Team(self.domain, y), Team(self.domain, w), Team(self.domain, z))
        raise AssertionError("union witness not found")

    def downward_witness(self):
        for mask in np.flatnonzero(self.table):
            mask = int(mask)
            for c in members_of(mask):
                if not self.table[mask ^ (1 << c)]:
                    return (Team(self.domain, mask), Team(self.domain, mask ^ (1 << c)))
        return None

    def upward_witness(self):
        # the empty team is exempt: it satisfies everything with the empty team property
        full = (1 << self.m) - 1
        for mask in np.flatnonzero(self.table):
            mask = int(mask)
            if not mask:
                continue
            for c in members_of(full & ~mask):
                if not self.table[mask | (1 << c)]:
                    return (Team(self.domain, mask), Team(self.domain, mask | (1 << c)))
        return None

    def flat_witness(self):
        singles = sum(1 << c for c in range(self.m) if self.table[1 << c])
        idx = lattice.indices(self.m)
        expected = (idx & ~singles) == 0
        bad = np.flatnonzero(expected != self.table)
        if bad.size == 0:
            return None
        sizes = lattice.popcounts(self.m)
        z = int(bad[np.lexsort((bad, sizes[bad]))[0]])
        return (Team(self.domain, z),)

    def witness(self, kind: str):
        return {
            "empty-team": self.empty_team_witness,
            "union-closed": self.union_witness,
            "downwards-closed": self.downward_witness,
            "upwards-closed": self.upward_witness,
            "flat": self.flat_witness,
        }[kind]()

    @property
    def union_closed(self) -> bool:
        return self.union_witness() is None

    @property
    def flat(self) -> bool:
        return self.flat_witness() is None

    def project(self, target: Sequence[str]) -> TeamProperty:
        """The property ``{X restricted to target : X in self}``."""
        target = check_domain(target)
        image = projection_map(self.domain, target)
        return TeamProperty.from_masks(target, set(image[self.table].tolist()))


def members_of_sub(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` in increasing order."""
    subs = []
    sub = mask
    while True:
        subs.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & mask
    return iter(reversed(subs))


def projection_map(domain: VarSet, target: VarSet) -> np.ndarray:
    """Array mapping each team mask over ``domain`` to its projection's mask."""
    n = len(domain)
    if n > DEFAULT_CAPS.eval_vars:
        raise CapExceeded("projection maps are limited to the enumeration cap")
    images = np.array([1 << project_code(c, domain, target) for c in range(1 << n)], dtype=np.int64)
    return lattice.or_image(images, 1 << n)
