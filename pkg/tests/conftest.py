from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make oracles importable

from evograph import build_graph

# Three nodes, three stamps, one edge per slice.  Small enough to check by
# hand, rich enough to exercise time jumps, inactive nodes, and the
# product-sum undercount.
DEMO_TRIPLES = [(1, 2, 1), (1, 3, 2), (2, 3, 3)]


@pytest.fixture
def demo():
    return build_graph(DEMO_TRIPLES, directed=True)


# Six authors, three years.  The arrow direction is citing -> cited.
#   year 1: B cites A, C cites B
#   year 2: D cites A, C cites F
#   year 3: E cites C, F cites E, D cites F
TOY_CITATIONS = [
    ("B", "A", 1),
    ("C", "B", 1),
    ("D", "A", 2),
    ("C", "F", 2),
    ("E", "C", 3),
    ("F", "E", 3),
    ("D", "F", 3),
]


@pytest.fixture
def toy_citation_file(tmp_path):
    path = tmp_path / "citations.tsv"
    lines = ["# toy citation network"]
    lines += [f"{a}\t{b}\t{y}" for a, b, y in TOY_CITATIONS]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
