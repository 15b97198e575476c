import pytest

from strangeness.moves import canned_scene

# Canned scenes are deterministic but carry per-instance analysis caches;
# sharing one instance per name across the whole session keeps the suite fast.


@pytest.fixture(scope="session")
def catalog():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = canned_scene(name)
        return cache[name]

    return get
