import numpy as np
import pytest


class ScriptedRng:
    """Stand-in random stream that replays a fixed list of uniforms."""

    def __init__(self, values):
        self.values = [float(v) for v in values]

    def uniform(self, size=None):
        if size is None:
            return self.values.pop(0)
        shape = (size,) if isinstance(size, int) else tuple(size)
        n = int(np.prod(shape))
        out = np.array([self.values.pop(0) for _ in range(n)])
        return out.reshape(shape)


@pytest.fixture
def scripted():
    return ScriptedRng
