"""Axiom rules as data, and the machinery that instantiates them.

Every axiom is written as a set of premise literals and a disjunction of
conclusion literals over named variables.  A rule with no conclusion is a
forbidden co-occurrence (the thinness rules and the two lemmas).  A literal
template is a tuple of blocks of variable names, e.g. ``(("a1", "a2"),
("b1", "b2"), ("c",))`` for ``(a1,a2|b1,b2|c)``.

Instantiation follows one reading throughout: variables take pairwise
distinct taxa, except for pairs listed in ``may_coincide``.  A literal whose
taxa are not distinct is ill-formed.  An ill-formed premise never holds; an
ill-formed conclusion disjunct is dropped, and if every disjunct drops the
instance holds vacuously.

Two scanners produce violating instances.  :func:`naive_violations` walks
every assignment of the variables in lexicographic order.
:func:`violations` binds the first premise against each matching entry and
only enumerates the remaining free variables; it is the one the checkers use.
Tests hold the two equal.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product

from .systems import Quartet, Quintet

Template = tuple  # tuple[tuple[str, ...], ...]


def lit(text: str) -> Template:
    """Parse ``"a1 a2 | b1 b2 | c"`` into a literal template."""
    return tuple(tuple(part.split()) for part in text.split("|"))


def overline(pair: str, triple: str) -> list[Template]:
    """Templates of the four-way disjunction (a1,a2 | overline{b1,b2,b3})."""
    a1, a2 = pair.split()
    b1, b2, b3 = triple.split()
    return [
        ((a1, a2), (b1, b2, b3)),
        ((a1, a2), (b1, b2), (b3,)),
        ((a1, a2), (b1, b3), (b2,)),
        ((a1, a2), (b2, b3), (b1,)),
    ]


@dataclass(frozen=True)
class Rule:
    id: str
    axiom: str
    variables: tuple[str, ...]
    premises: tuple[Template, ...]
    conclusion: tuple[Template, ...] = ()
    may_coincide: frozenset = frozenset()
    size: int = 5

    def __post_init__(self):
        used = {v for t in self.premises + self.conclusion for b in t for v in b}
        if used != set(self.variables):
            raise ValueError(f"{self.id}: variables {self.variables} vs used {sorted(used)}")
        pos = {v: i for i, v in enumerate(self.variables)}

        def index(t):
            return tuple(tuple(pos[v] for v in b) for b in t)

        names = self.variables
        differ = tuple(
            (i, j)
            for i in range(len(names))
            for j in range(i + 1, len(names))
            if not self.may_equal(names[i], names[j])
        )
        first = index(self.premises[0])
        bound = {i for b in first for i in b}
        # precomputed index forms; the dataclass is frozen
        object.__setattr__(self, "_prem", tuple(index(t) for t in self.premises))
        object.__setattr__(self, "_concl", tuple(index(t) for t in self.conclusion))
        object.__setattr__(self, "_differ", differ)
        object.__setattr__(self, "_schemes", _schemes(first))
        object.__setattr__(self, "_first_kind", tuple(sorted((len(b) for b in first), reverse=True)))
        object.__setattr__(self, "_apart", {
            i: tuple(j for pair in differ if i in pair for j in pair if j != i)
            for i in range(len(names))
        })
        object.__setattr__(self, "_free", tuple(i for i in range(len(names)) if i not in bound))

    @property
    def forbids(self) -> bool:
        return not self.conclusion

    @property
    def entry_type(self):
        return Quintet if self.size == 5 else Quartet

    def may_equal(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self.may_coincide

    def literal(self, template: Template, witnesses: tuple):
        """Instantiate a template given in variable names; ``None`` if ill-formed."""
        env = dict(zip(self.variables, witnesses))
        return _make(self.entry_type, tuple(tuple(env[v] for v in b) for b in template))

    def premise_entries(self, witnesses: tuple) -> list:
        return [self.literal(t, witnesses) for t in self.premises]

    def conclusion_entries(self, witnesses: tuple) -> list:
        """Well-formed conclusion disjuncts (ill-formed ones dropped)."""
        out = [self.literal(t, witnesses) for t in self.conclusion]
        return [c for c in out if c is not None]

    def violated_by(self, system, witnesses: tuple) -> bool:
        """Re-evaluate this rule at one instantiation."""
        if len(witnesses) != len(self.variables):
            raise ValueError(f"{self.id} takes {len(self.variables)} witnesses")
        w = tuple(witnesses)
        for i, j in self._differ:
            if w[i] == w[j]:
                return False
        return self._violated(system, w, 0)

    def _violated(self, system, w, skip):
        cls = self.entry_type
        for t in self._prem[skip:]:
            p = _make(cls, tuple(tuple(w[i] for i in b) for b in t))
            if p is None or p not in system:
                return False
        if not self._concl:
            return True
        live = False
        for t in self._concl:
            c = _make(cls, tuple(tuple(w[i] for i in b) for b in t))
            if c is None:
                continue
            if c in system:
                return False
            live = True
        return live


def _schemes(first: Template) -> list[tuple]:
    """Ways to read the first premise's variables off a canonical entry.

    Canonical blocks are ordered by size descending, so each scheme is a
    tuple of (variable index, position in the flattened entry).
    """
    sizes = sorted((len(b) for b in first), reverse=True)
    starts = [sum(sizes[:k]) for k in range(len(sizes))]
    out = set()
    for order in permutations(range(len(first))):
        blocks = [first[o] for o in order]
        if any(len(b) != sizes[k] for k, b in enumerate(blocks)):
            continue
        for choice in product(*[list(permutations(b)) for b in blocks]):
            scheme = []
            for k, vs in enumerate(choice):
                scheme.extend((v, starts[k] + m) for m, v in enumerate(vs))
            out.add(tuple(sorted(scheme)))
    return sorted(out)


@lru_cache(maxsize=1 << 20)
def _make(cls, blocks):
    flat = [t for b in blocks for t in b]
    if len(set(flat)) != len(flat):
        return None
    try:
        return cls(blocks)
    except ValueError:
        return None


@dataclass(frozen=True)
class Certificate:
    """A violated axiom instance.

    ``rule`` is the rule id (e.g. ``"thin.iii"``), ``witnesses`` the taxa
    bound to the rule's variables in order, ``offending_entries`` the
    entries instantiating the premise.  For completeness failures the rule is
    ``thin.incomplete`` / ``thin.duplicate`` and the witnesses are the
    sorted support.
    """

    axiom: str
    rule: str
    witnesses: tuple
    offending_entries: tuple = field(default=())

    def line(self) -> str:
        ents = ";".join(e.compact() for e in self.offending_entries)
        return f"VIOLATION {self.rule} witnesses={','.join(self.witnesses)} entries={ents}"

    def reproduces(self, system) -> bool:
        """True iff the named violation is present in ``system``."""
        if self.rule.endswith((".incomplete", ".missing")):
            return len(system.on(self.witnesses)) == 0
        if self.rule.endswith(".duplicate"):
            return len(system.on(self.witnesses)) > 1
        return RULES[self.rule].violated_by(system, self.witnesses)

    def __str__(self):
        return self.line()


def _certificate(rule: Rule, system, witnesses: tuple) -> Certificate:
    return Certificate(rule.axiom, rule.id, tuple(witnesses), tuple(rule.premise_entries(witnesses)))


def violations(rule: Rule, system, exhaustive: bool = True) -> list[Certificate]:
    """Violating instances of ``rule``, sorted by witness tuple.

    With ``exhaustive=False`` only the lexicographically smallest one is
    returned (or none).
    """
    taxa = tuple(sorted(system.universe))
    k = len(rule.variables)
    found = set()
    for entry in system:
        if entry.kind != rule._first_kind:
            continue
        flat = [t for b in entry.blocks for t in b]
        for scheme in rule._schemes:
            w = [None] * k
            for v, p in scheme:
                w[v] = flat[p]
            for full in _fill(w, rule._free, rule._apart, 0, taxa):
                if rule._violated(system, full, 1):
                    found.add(full)
    ws = sorted(found)
    if not exhaustive:
        ws = ws[:1]
    return [_certificate(rule, system, w) for w in ws]


def _fill(w, free, apart, k, taxa):
    # bound variables come from one entry, so they are already distinct
    if k == len(free):
        yield tuple(w)
        return
    i = free[k]
    taken = {w[j] for j in apart[i]} - {None}
    for t in taxa:
        if t in taken:
            continue
        w[i] = t
        yield from _fill(w, free, apart, k + 1, taxa)
    w[i] = None


def naive_violations(rule: Rule, system, exhaustive: bool = True) -> list[Certificate]:
    """Reference scanner: try every assignment, in lexicographic order."""
    taxa = tuple(sorted(system.universe))
    out = []
    for w in product(taxa, repeat=len(rule.variables)):
        if rule.violated_by(system, w):
            out.append(_certificate(rule, system, w))
            if not exhaustive:
                break
    return out


# -- quartet axioms ---------------------------------------------------------

Q4 = dict(size=4)

QUARTET_RULES = (
    Rule("trans4", "transitive", ("a1", "a2", "b1", "b2", "x"),
         premises=(lit("a1 x | b1 b2"), lit("a2 x | b1 b2")),
         conclusion=(lit("a1 a2 | b1 b2"),), **Q4),
    Rule("sat4", "saturated", ("a1", "a2", "b1", "b2", "x"),
         premises=(lit("a1 a2 | b1 b2"),),
         conclusion=(lit("a1 x | b1 b2"), lit("a1 a2 | b1 x")), **Q4),
)

# -- quintet axioms, in the order they are checked --------------------------

XY = frozenset({frozenset(("x", "y"))})

THIN_RULES = (
    Rule("thin.i", "thin", ("a", "b", "c", "d", "x", "y"),
         premises=(lit("a b | c x | d"), lit("a c | b y | d")), may_coincide=XY),
    Rule("thin.ii", "thin", ("a", "b", "c", "d", "x", "y"),
         premises=(lit("a b | c d x"), lit("a y | b c d")), may_coincide=XY),
    Rule("thin.iii", "thin", ("a", "b", "c", "d", "x", "y"),
         premises=(lit("a b | c x | d"), lit("a c d | b y")), may_coincide=XY),
    Rule("thin.iv", "thin", ("a", "b", "c", "d", "x", "y"),
         premises=(lit("a x | b c d"), lit("a d | b c | y")), may_coincide=XY),
)

TRANS_RULES = (
    Rule("trans.i", "transitive", ("a1", "a2", "b1", "x", "c1", "c2"),
         premises=(lit("a1 a2 | b1 x | c1"), lit("a1 a2 | b1 x | c2")),
         conclusion=tuple(overline("a1 a2", "c1 c2 b1"))),
    Rule("trans.ii", "transitive", ("a1", "a2", "b1", "b2", "x", "c1"),
         premises=(lit("a1 a2 | b1 x | c1"), lit("a1 a2 | b2 x | c1")),
         conclusion=(lit("a1 a2 | b1 b2 | c1"),)),
    Rule("trans.iii", "transitive", ("a1", "a2", "x", "b1", "b2", "b3"),
         premises=(lit("a1 x | b1 b2 b3"), lit("a2 x | b1 b2 b3")),
         conclusion=(lit("a1 a2 | b1 b2 b3"),)),
    Rule("trans.iv", "transitive", ("a1", "a2", "b1", "b2", "b3", "x"),
         premises=(lit("a1 a2 | b1 b3 x"), lit("a1 a2 | b2 b3 x")),
         conclusion=(lit("a1 a2 | b1 b2 b3"), lit("a1 a2 | b1 b2 | b3"))),
    Rule("trans.v", "transitive", ("a1", "a2", "b1", "b2", "b3", "x"),
         premises=(lit("a1 a2 | b1 x b2"), lit("a1 a2 | b1 x | b3")),
         conclusion=(lit("a1 a2 | b1 b2 | b3"),)),
    Rule("trans.vi", "transitive", ("a1", "a2", "b1", "b2", "b3", "x"),
         premises=(lit("a1 a2 | b1 b2 | x"), lit("a1 a2 | b1 b3 x")),
         conclusion=(lit("a1 a2 | b1 b2 | b3"),)),
)

SAT_RULES = (
    Rule("sat.i", "saturated", ("a1", "a2", "b1", "b2", "c", "x"),
         premises=(lit("a1 a2 | b1 b2 | c"),),
         conclusion=(lit("a1 a2 | b1 b2 | x"), lit("a1 x | b1 b2 | c"),
                     lit("a1 a2 | b1 x | c"))),
    Rule("sat.ii", "saturated", ("a1", "a2", "b1", "b2", "b3", "x"),
         premises=(lit("a1 a2 | b1 b2 b3"),),
         conclusion=(lit("a1 x | b1 b2 b3"), *overline("a1 a2", "b1 b2 x"))),
    Rule("sat.iii", "saturated", ("a1", "a2", "a3", "a4", "a5", "x"),
         premises=(lit("a1 a2 a3 a4 a5"),),
         conclusion=(lit("a1 a2 a3 a4 x"), lit("a1 x | a2 a3 a4"),
                     lit("a2 x | a1 a3 a4"), lit("a3 x | a1 a2 a4"),
                     lit("a4 x | a1 a2 a3"))),
)

# Forbidden co-occurrences that follow from TTS; diagnostics, not axioms.
_A31 = lit("a b | c x | d")
LEMMA_RULES = tuple(
    Rule(f"Lemma3.1.{tag}", "lemma", ("a", "b", "c", "d", "x", "y"),
         premises=(_A31, lit(other)), may_coincide=XY)
    for tag, other in [
        ("B", "a c | b d | y"),
        ("C", "a c | d y | b"),
        ("D", "b d | c y | a"),
        ("E", "y c | a b d"),
        ("F", "a c | b d y"),
        ("G", "a d | b c y"),
        ("H", "d y | a b c"),
    ]
) + tuple(
    Rule(f"Lemma3.2.{tag}", "lemma", ("a", "b", "c", "d", "x", "y"),
         premises=(lit("a c | b d y"), lit(other)), may_coincide=XY)
    for tag, other in [("B", "b x | a c d"), ("C", "a b | c d | x")]
)

RULES = {r.id: r for r in QUARTET_RULES + THIN_RULES + TRANS_RULES + SAT_RULES + LEMMA_RULES}
