"""
Built-in simulation cases.

Case tables list (row, col) positions counted from 1 on the 50 x 50 scan grid;
scenes and ``damas_raster`` use zero-based grid cells.
"""

from easydamas.exceptions import ConfigurationError
from easydamas.models.scene import SourceEntry, SourceScene

# Letter glyphs on a stride-2 lattice; the top glyph row is row 30 counted from 1.
_GLYPHS: dict[str, tuple[str, ...]] = {
    "D": ("XXX.", "X..X", "X..X", "X..X", "X..X", "XXX."),
    "A": (".XX.", "X..X", "X..X", "XXXX", "X..X", "X..X"),
    "M": ("X...X", "XX.XX", "X.X.X", "X...X", "X...X", "X...X"),
    "S": (".XXX", "X...", "XXX.", "...X", "...X", "XXXX"),
}
_WORD = (("D", 5), ("A", 13), ("M", 21), ("A", 31), ("S", 39))
_TOP_ROW = 30
_STRIDE = 2

CASE_EPSILONS: dict[int, float] = {1: 0.1, 2: 0.3, 3: 0.1, 4: 0.1}

_POINT_CASES: dict[int, list[tuple[int, int, float]]] = {
    1: [(25, 25, 1.0)],
    2: [(25, 25, 1.0), (26, 25, 1.0)],
    3: [(25, 25, 1.0), (29, 25, 0.316)],
}


def damas_raster() -> list[tuple[int, int]]:
    """Zero-based (row, col) cells spelling "DAMAS", 70 in total."""
    cells: list[tuple[int, int]] = []
    for letter, start_col in _WORD:
        for r, line in enumerate(_GLYPHS[letter]):
            for c, mark in enumerate(line):
                if mark == "X":
                    cells.append((_TOP_ROW - _STRIDE * r - 1, start_col + _STRIDE * c - 1))
    return cells


def builtin_case(case_id: int, n_per_side: int = 50, frequency: float = 3000.0) -> SourceScene:
    """
    Source scene of simulation case 1..4.

    Raises:
        ConfigurationError: Unknown case or a grid too small to hold it.
    """
    if case_id in _POINT_CASES:
        triples = [(row - 1, col - 1, amp) for row, col, amp in _POINT_CASES[case_id]]
    elif case_id == 4:
        triples = [(row, col, 1.0) for row, col in damas_raster()]
    else:
        raise ConfigurationError(f"Unknown case {case_id}; expected 1, 2, 3 or 4")

    largest = max(max(row, col) for row, col, _ in triples)
    if largest >= n_per_side:
        raise ConfigurationError(
            f"Case {case_id} needs at least {largest + 1} points per side, got {n_per_side}"
        )

    entries = sorted(
        (SourceEntry(index=row * n_per_side + col, amplitude=amp) for row, col, amp in triples),
        key=lambda e: e.index,
    )
    return SourceScene(
        entries=entries,
        grid_size=n_per_side * n_per_side,
        frequency=frequency,
        name=f"case{case_id}",
    )
