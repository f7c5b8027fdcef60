from __future__ import annotations

from hypothesis import strategies as st

from ccgame.matrix import new_matrix


@st.composite
def grids(draw, max_rows=4, max_cols=4, max_alphabet=3, min_alphabet=2):
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    alphabet = draw(st.integers(min_alphabet, max_alphabet))
    cells = draw(st.lists(st.lists(st.integers(0, alphabet - 1), min_size=cols, max_size=cols), min_size=rows, max_size=rows))
    return cells, alphabet


@st.composite
def matrices(draw, max_rows=4, max_cols=4, max_alphabet=3, min_alphabet=2):
    cells, alphabet = draw(grids(max_rows, max_cols, max_alphabet, min_alphabet))
    return new_matrix(cells, alphabet)
