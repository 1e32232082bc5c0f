"""Quartets, quintets and the systems that collect them.

A quartet is a partition of a 4-subset of taxa of kind (2,2) or (4); a
quintet partitions a 5-subset with kind (2,2,1), (3,2) or (5).  Both are
kept in a canonical block order so that equality is structural.

Systems are immutable containers indexed by support.  They deliberately
allow several entries on one support: thinness is something to check, not
something the constructor enforces.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .errors import FormatError

TAXON_RE = re.compile(r"^[A-Za-z0-9_.\-]+$")

Block = tuple  # tuple[str, ...], sorted


def _canonical_blocks(blocks: Iterable[Iterable[str]]) -> tuple[Block, ...]:
    bs = [tuple(sorted(b)) for b in blocks]
    bs.sort(key=lambda b: (-len(b), b))
    return tuple(bs)


@dataclass(frozen=True, order=True)
class _Partition:
    blocks: tuple[Block, ...]

    SIZE = 0
    KINDS = frozenset()

    def __post_init__(self):
        canon = _canonical_blocks(self.blocks)
        object.__setattr__(self, "blocks", canon)
        flat = [t for b in canon for t in b]
        if len(flat) != self.SIZE or len(set(flat)) != self.SIZE:
            raise ValueError(
                f"{type(self).__name__} needs {self.SIZE} distinct taxa, got {flat}"
            )
        kind = tuple(len(b) for b in canon)
        if kind not in self.KINDS:
            raise ValueError(f"{type(self).__name__} cannot have kind {kind}")

    @classmethod
    def of(cls, *blocks):
        """Build from blocks; each block is an iterable of taxa."""
        return cls(tuple(tuple(b) for b in blocks))

    @classmethod
    def maybe(cls, *blocks):
        """Like :meth:`of` but return ``None`` for an ill-formed literal."""
        try:
            return cls.of(*blocks)
        except ValueError:
            return None

    @property
    def kind(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    @property
    def support(self) -> frozenset:
        return frozenset(t for b in self.blocks for t in b)

    @property
    def is_star(self) -> bool:
        return len(self.blocks) == 1

    def pairs(self) -> tuple[Block, ...]:
        return tuple(b for b in self.blocks if len(b) == 2)

    def _text_blocks(self) -> list[Block]:
        # pairs first, then the triple, then the singleton, as in the file format
        order = {2: 0, 3: 1, 1: 2, 4: 3, 5: 3}
        return sorted(self.blocks, key=lambda b: (order[len(b)], b))

    def to_text(self) -> str:
        """File-format text, e.g. ``"a b | c d | e"``."""
        return " | ".join(" ".join(b) for b in self._text_blocks())

    def compact(self) -> str:
        """Whitespace-free form used in certificate lines, e.g. ``a,b|c,d|e``."""
        return "|".join(",".join(b) for b in self._text_blocks())

    @classmethod
    def parse(cls, text: str):
        parts = [p.split() for p in text.split("|")]
        if any(not p for p in parts):
            raise ValueError(f"empty block in {text!r}")
        for p in parts:
            for tok in p:
                if not TAXON_RE.match(tok):
                    raise ValueError(f"bad taxon label {tok!r}")
        if len(parts) == 1 and len(parts[0]) != cls.SIZE:
            raise ValueError(f"expected {cls.SIZE} taxa in {text!r}")
        return cls(tuple(tuple(p) for p in parts))

    def __str__(self):
        return f"({self.to_text()})"


class Quartet(_Partition):
    SIZE = 4
    KINDS = frozenset({(2, 2), (4,)})

    def __repr__(self):
        return f"Quartet({self.to_text()!r})"


class Quintet(_Partition):
    SIZE = 5
    KINDS = frozenset({(2, 2, 1), (3, 2), (5,)})

    def __repr__(self):
        return f"Quintet({self.to_text()!r})"


def all_quartets(support: Iterable[str]) -> list[Quartet]:
    """The 4 quartets on a 4-set: three (2,2) splittings and the star."""
    a, b, c, d = sorted(support)
    return [
        Quartet.of((a, b), (c, d)),
        Quartet.of((a, c), (b, d)),
        Quartet.of((a, d), (b, c)),
        Quartet.of((a, b, c, d)),
    ]


def all_quintets(support: Iterable[str]) -> list[Quintet]:
    """The 26 quintets on a 5-set in a fixed order: 15 of kind (2,2,1),
    10 of kind (3,2), then the star."""
    s = sorted(support)
    if len(s) != 5 or len(set(s)) != 5:
        raise ValueError("need 5 distinct taxa")
    out = []
    for e in s:
        rest = [t for t in s if t != e]
        a = rest[0]
        for b in rest[1:]:
            c, d = [t for t in rest if t not in (a, b)]
            out.append(Quintet.of((a, b), (c, d), (e,)))
    for pair in combinations(s, 2):
        out.append(Quintet.of(pair, [t for t in s if t not in pair]))
    out.append(Quintet.of(s))
    return out


class _System:
    __slots__ = ("universe", "entries", "_by_support", "_members")

    ENTRY = _Partition

    def __init__(self, entries: Iterable = (), universe: Iterable[str] | None = None):
        entries = list(entries)
        for e in entries:
            if not isinstance(e, self.ENTRY):
                raise TypeError(f"expected {self.ENTRY.__name__}, got {e!r}")
        mentioned = frozenset(t for e in entries for t in e.support)
        if universe is None:
            universe = mentioned
        else:
            universe = frozenset(universe)
            stray = mentioned - universe
            if stray:
                raise ValueError(f"entries mention taxa outside the universe: {sorted(stray)}")
        by_support: dict = {}
        for e in sorted(set(entries)):
            by_support.setdefault(e.support, []).append(e)
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "entries", tuple(sorted(set(entries), key=_entry_key)))
        object.__setattr__(self, "_by_support", {k: tuple(v) for k, v in by_support.items()})
        object.__setattr__(self, "_members", frozenset(entries))

    @property
    def taxa(self) -> tuple[str, ...]:
        return tuple(sorted(self.universe))

    def __contains__(self, item) -> bool:
        return item in self._members

    def __iter__(self) -> Iterator:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.universe == other.universe and self._members == other._members

    def __hash__(self):
        return hash((self.universe, self._members))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __reduce__(self):
        return type(self), (self.entries, self.universe)

    def on(self, support: Iterable[str]) -> tuple:
        """All entries whose support is exactly ``support`` (usually 0 or 1)."""
        return self._by_support.get(frozenset(support), ())

    def get(self, support: Iterable[str]):
        """The unique entry on ``support``, or ``None`` when missing or duplicated."""
        found = self.on(support)
        return found[0] if len(found) == 1 else None

    def supports(self):
        return self._by_support.keys()

    def relabel(self, mapping: dict):
        """Copy of the system with taxa renamed through ``mapping``; taxa
        not in ``mapping`` keep their names.  The renaming must be injective."""
        cls = type(self)
        new = {t: mapping.get(t, t) for t in self.universe}
        if len(set(new.values())) != len(new):
            raise ValueError("relabelling merges taxa")
        ents = [cls.ENTRY(tuple(tuple(new[t] for t in b) for b in e.blocks)) for e in self.entries]
        return cls(ents, universe=new.values())

    def to_text(self, header: bool = False) -> str:
        lines = []
        if header:
            lines.append("taxa: " + " ".join(self.taxa))
        lines.extend(e.to_text() for e in self.entries)
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def parse(cls, text: str):
        """Read the line format; ``#`` starts a comment, ``taxa:`` fixes the universe."""
        universe = None
        entries = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("taxa:"):
                if universe is not None:
                    raise FormatError("duplicate taxa: header", lineno)
                names = line[len("taxa:"):].split()
                bad = [n for n in names if not TAXON_RE.match(n)]
                if bad:
                    raise FormatError(f"bad taxon label {bad[0]!r}", lineno)
                if len(set(names)) != len(names):
                    raise FormatError("repeated taxon in taxa: header", lineno)
                universe = names
                continue
            try:
                entries.append(cls.ENTRY.parse(line))
            except ValueError as exc:
                raise FormatError(str(exc), lineno) from None
        try:
            return cls(entries, universe=universe)
        except ValueError as exc:
            raise FormatError(str(exc), None) from None

    def __repr__(self):
        return f"{type(self).__name__}(|X|={len(self.universe)}, {len(self)} entries)"


def _entry_key(e):
    return (tuple(sorted(e.support)), e.blocks)


class QuartetSystem(_System):
    ENTRY = Quartet


class QuintetSystem(_System):
    ENTRY = Quintet
