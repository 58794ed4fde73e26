import sys
from pathlib import Path

import pytest

# Oracle helpers live next to the tests.
sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def walkthrough_data():
    from cropadvisor.data import fixture_bundle

    return fixture_bundle()


@pytest.fixture(scope="session")
def walkthrough_bundle(walkthrough_data):
    """Loaded fixture bundle with both models trained (shared: training the
    classifier takes several seconds)."""
    from cropadvisor.pipeline import bundle_from_memory

    return bundle_from_memory(walkthrough_data, seed=0)


@pytest.fixture(scope="session")
def walkthrough_dir(walkthrough_data, tmp_path_factory):
    """The fixture bundle written out as CSVs plus manifest."""
    directory = tmp_path_factory.mktemp("fixture_bundle")
    manifest = walkthrough_data.write(directory)
    return manifest
