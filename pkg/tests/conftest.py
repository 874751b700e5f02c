"""Shared fixtures: small arrangement files on disk."""

import pytest


ARRANGEMENT_FILES = {
    "boolean2.arr": "dim 2\n1 0 0\n0 1 0\n",
    "generic3.arr": "# three lines in general position\ndim 2\n1 0 0\n0 1 0\n1 1 1   # x + y = 1\n",
    "concurrent3.arr": "dim 2\n1 0 0\n0 1 0\n1 -1 0\n",
    "points3.arr": "dim 1\n1 0\n1 1\n1 2\n",
}

TORIC_FILES = {
    "crossing.tor": "torus 2\n1 0 0/1\n0 1 1/2\n",
    "triple.tor": "torus 2\n1 0 0\n0 1 0\n1 1 0\n",
}


@pytest.fixture
def arrangement_dir(tmp_path):
    """Directory holding the sample arrangement and toric files."""
    for name, text in {**ARRANGEMENT_FILES, **TORIC_FILES}.items():
        (tmp_path / name).write_text(text)
    return tmp_path
