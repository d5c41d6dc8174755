"""Shipped model files and the cyclic-quiver generator."""

from __future__ import annotations

import logging
import re
from pathlib import Path
from typing import List, Tuple

from quivers.dsl import parse_model
from quivers.errors import ModelError
from quivers.model import QuiverModel

logger = logging.getLogger(__name__)

CORPUS_DIR = Path(__file__).with_name("data")
CORPUS_FILES = ("q1_quantum", "q1_jordan", "q1_weyl", "q1_sklyanin", "conifold")
MAX_CYCLIC = 4

_CYCLIC_RE = re.compile(r"^cyclic_(?P<n>\d+)(?:\.qp)?$")


def cyclic_model(n: int) -> str:
    """
    DSL text for the cyclic quiver with n + 1 vertices: arrows a_i: v_i -> v_{i+1},
    astar_i back, a loop b_i at every vertex, and the one-parameter potential

        W = sum_i b_{i+1} astar_i a_i - q b_0 a_0 astar_0 - sum_{i>=1} b_i a_i astar_i

    (indices mod n + 1), cut along all loops. The parameters multiply to q around the cycle.
    """
    if not 1 <= n <= MAX_CYCLIC:
        raise ModelError(f"Cyclic models are generated for 1 <= n <= {MAX_CYCLIC}, got {n!r}")
    size = n + 1
    vertices = [f"v{i}" for i in range(size)]
    lines = [
        f"# Cyclic quiver with {size} vertices (n = {n}), deformed at a single term.",
        f"vertex {', '.join(vertices)}",
    ]
    for i in range(size):
        lines.append(f"arrow a{i}: v{i} -> v{(i + 1) % size}")
        lines.append(f"arrow astar{i}: v{(i + 1) % size} -> v{i}")
    lines.extend(f"arrow b{i}: v{i} -> v{i}" for i in range(size))
    lines.append("param q")
    terms: List[str] = [f"b{(i + 1) % size}*astar{i}*a{i}" for i in range(size)]
    lines.append(f"potential W = {terms[0]}")
    lines.extend(f"    + {term}" for term in terms[1:])
    lines.append("    - q*b0*a0*astar0")
    lines.extend(f"    - b{i}*a{i}*astar{i}" for i in range(1, size))
    lines.append(f"cut {{ {', '.join(f'b{i}' for i in range(size))} }}")
    lines.append(f"family cyclic({n})")
    return "\n".join(lines) + "\n"


def corpus_names() -> List[str]:
    return list(CORPUS_FILES) + [f"cyclic_{n}" for n in range(1, MAX_CYCLIC + 1)]


def corpus_path(name: str) -> Path:
    stem = name[:-3] if name.endswith(".qp") else name
    if stem not in CORPUS_FILES:
        raise ModelError(f"No corpus file named {name!r}; available: {', '.join(CORPUS_FILES)}")
    return CORPUS_DIR / f"{stem}.qp"


def corpus_text(name: str) -> str:
    if match := _CYCLIC_RE.match(name):
        return cyclic_model(int(match.group("n")))
    with corpus_path(name).open("r", encoding="utf-8") as file:
        return file.read()


def load_corpus(name: str) -> QuiverModel:
    return parse_model(corpus_text(name))


def read_model_source(source: str) -> Tuple[str, str]:
    """
    Text of a model given a file path or a corpus name (`conifold`, `q1_quantum.qp`,
    `cyclic_2`). Returns (label, text); a readable file always wins over the corpus.
    """
    path = Path(source)
    if path.is_file():
        with path.open("r", encoding="utf-8") as file:
            return str(path), file.read()
    stem = path.name
    if _CYCLIC_RE.match(stem) or (stem[:-3] if stem.endswith(".qp") else stem) in CORPUS_FILES:
        logger.debug(f"Resolved {source!r} from the built-in corpus")
        return f"corpus:{stem}", corpus_text(stem)
    raise FileNotFoundError(f"Model file {source!r} not found and not a corpus name")
