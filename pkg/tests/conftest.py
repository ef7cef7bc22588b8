import pytest

import weylstat as ws


@pytest.fixture(scope="session")
def systems():
    """Catalogs shared across the suite, keyed by descriptor string."""
    cache = {}

    def get(spec: str) -> ws.RootSystem:
        if spec not in cache:
            cache[spec] = ws.build(spec)
        return cache[spec]

    return get
