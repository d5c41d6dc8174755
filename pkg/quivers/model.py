"""
Quivers with parametric potentials.

Word convention: the word x*y*z traverses x, then y, then z, so it is composable when
t(x) = s(y) and t(y) = s(z); a potential word must also close up, t(z) = s(x).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import sympy

from quivers.errors import (
    DimensionMismatch,
    DuplicateName,
    InvalidCut,
    NonComposableWord,
    NonCyclicWord,
    UndeclaredParameter,
    UnknownArrow,
    UnknownVertex,
)

logger = logging.getLogger(__name__)

Word = Tuple[str, ...]


def normalize_coefficient(value) -> sympy.Expr:
    """Canonical rational-function form of a potential or relation coefficient."""
    return sympy.cancel(sympy.sympify(value))


@dataclass(frozen=True, slots=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class PathTerm:
    """coefficient * word, with the coefficient a rational function in the parameters."""

    coefficient: sympy.Expr
    word: Word

    def __post_init__(self):
        object.__setattr__(self, "coefficient", normalize_coefficient(self.coefficient))
        object.__setattr__(self, "word", tuple(self.word))


def combine_terms(terms: Iterable[PathTerm]) -> Tuple[PathTerm, ...]:
    """Merge equal words, drop zero coefficients, and sort by word."""
    merged: Dict[Word, sympy.Expr] = {}
    for term in terms:
        merged[term.word] = merged.get(term.word, sympy.Integer(0)) + term.coefficient
    out = []
    for word in sorted(merged):
        coefficient = normalize_coefficient(merged[word])
        if coefficient != 0:
            out.append(PathTerm(coefficient, word))
    return tuple(out)


@dataclass(frozen=True)
class NCPoly:
    """
    A relation in the path algebra: a combination of paths from `source` to `target`.

    The empty word stands for the idempotent at `source` (== `target`).
    """

    terms: Tuple[PathTerm, ...]
    source: str
    target: str

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def arrows(self) -> List[str]:
        return sorted({name for term in self.terms for name in term.word})

    def render(self) -> str:
        from quivers.dsl import render_polynomial

        return render_polynomial(self.terms)

    def to_dict(self) -> dict:
        return {"source": self.source, "target": self.target, "relation": self.render()}


@dataclass(frozen=True)
class QuiverModel:
    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...]
    params: Tuple[str, ...] = ()
    potential: Tuple[PathTerm, ...] = ()
    potential_name: str = "W"
    cut: Optional[Tuple[str, ...]] = None
    family: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        object.__setattr__(self, "params", tuple(self.params))
        object.__setattr__(self, "potential", tuple(self.potential))
        if self.cut is not None:
            object.__setattr__(self, "cut", tuple(self.cut))
        self._validate()

    # -- lookups ----------------------------------------------------------------------

    @property
    def arrow_map(self) -> Dict[str, Arrow]:
        return {arrow.name: arrow for arrow in self.arrows}

    def arrow(self, name: str) -> Arrow:
        try:
            return self.arrow_map[name]
        except KeyError:
            raise UnknownArrow(f"Unknown arrow {name!r}") from None

    def vertex_index(self, vertex: str) -> int:
        try:
            return self.vertices.index(vertex)
        except ValueError:
            raise UnknownVertex(f"Unknown vertex {vertex!r}") from None

    @property
    def param_symbols(self) -> Dict[str, sympy.Symbol]:
        return {name: sympy.Symbol(name) for name in self.params}

    def check_dimension(self, alpha: Sequence[int]) -> Tuple[int, ...]:
        alpha = tuple(int(x) for x in alpha)
        if len(alpha) != len(self.vertices):
            raise DimensionMismatch(
                f"Dimension vector {alpha} has {len(alpha)} entries, the quiver has {len(self.vertices)} vertices"
            )
        if min(alpha, default=0) < 0:
            raise DimensionMismatch(f"Dimension vector {alpha} has a negative entry")
        return alpha

    # -- validation -------------------------------------------------------------------

    def _validate(self) -> None:
        seen = set()
        for vertex in self.vertices:
            if vertex in seen:
                raise DuplicateName(f"Vertex {vertex!r} declared twice")
            seen.add(vertex)
        names = set()
        for arrow in self.arrows:
            if arrow.name in names or arrow.name in seen:
                raise DuplicateName(f"Arrow name {arrow.name!r} is already in use")
            names.add(arrow.name)
            for end in (arrow.source, arrow.target):
                if end not in seen:
                    raise UnknownVertex(f"Arrow {arrow.name!r} uses unknown vertex {end!r}")
        if len(set(self.params)) != len(self.params):
            raise DuplicateName(f"Parameter declared twice in {list(self.params)}")
        for term in self.potential:
            self.check_word(term.word, cyclic=True)
            self.check_coefficient(term.coefficient)
        if self.cut is not None:
            from quivers.potential import validate_cut

            check = validate_cut(self, self.cut)
            if not check.valid:
                raise InvalidCut(check.reason)

    def check_word(self, word: Sequence[str], cyclic: bool) -> None:
        if not word:
            raise NonComposableWord("Potential words must be nonempty")
        arrows = [self.arrow(name) for name in word]
        for first, second in zip(arrows, arrows[1:]):
            if first.target != second.source:
                raise NonComposableWord(
                    f"Word {'*'.join(word)} is not composable: {first.name} ends at {first.target}, "
                    f"{second.name} starts at {second.source}"
                )
        if cyclic and arrows[-1].target != arrows[0].source:
            raise NonCyclicWord(
                f"Word {'*'.join(word)} is not cyclic: it ends at {arrows[-1].target}, starts at {arrows[0].source}"
            )

    def check_coefficient(self, coefficient: sympy.Expr) -> None:
        unknown = sorted(str(s) for s in coefficient.free_symbols if str(s) not in self.params)
        if unknown:
            raise UndeclaredParameter(f"Undeclared parameter(s) {', '.join(unknown)}")

    # -- derived ----------------------------------------------------------------------

    def with_cut(self, cut: Optional[Iterable[str]]) -> "QuiverModel":
        return QuiverModel(
            self.vertices,
            self.arrows,
            self.params,
            self.potential,
            self.potential_name,
            tuple(cut) if cut is not None else None,
            self.family,
        )

    def summary(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"name": a.name, "source": a.source, "target": a.target} for a in self.arrows],
            "params": list(self.params),
            "potential_terms": len(self.potential),
            "cut": list(self.cut) if self.cut is not None else None,
            "family": self.family,
        }
