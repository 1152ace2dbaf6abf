import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pytest

from zonoweave.groundset import WsCollection
from zonoweave.tiling import GTiling

# an n=4 g-tiling with eight tiles, τ({2};1,4) the only black one
BLACK4_TILES = [
    ([], 1, 4), ([1], 2, 4), ([2], 1, 3), ([2], 1, 4, "black"), ([2], 3, 4),
    ([4], 1, 2), ([4], 2, 3), ([2, 3], 1, 4),
]
BLACK4_SETS = [[], [1], [4], [1, 2], [1, 4], [2, 3], [2, 4], [3, 4], [1, 2, 3], [2, 3, 4], [1, 2, 3, 4]]


@pytest.fixture
def black4():
    return GTiling.of(4, BLACK4_TILES)


@pytest.fixture
def black4_spectrum():
    return WsCollection.from_sets(4, BLACK4_SETS)
