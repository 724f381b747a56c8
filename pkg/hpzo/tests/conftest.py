# conftest.py
# Shared fixtures and the hypothesis profile for the hpzo tests
import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "hpzo",
    max_examples=50,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("acceptance", max_examples=500, deadline=None)
settings.load_profile("acceptance" if os.environ.get("HPZO_RUN_ACCEPTANCE") == "1" else "hpzo")

# Sigma margin for fixed-seed statistical checks; acceptance runs use settings.sigma_margin
TEST_SIGMA = 4.0


@pytest.fixture
def output_dir(tmp_path, monkeypatch):
    """Routes every default output path into a per-test directory."""
    directory = tmp_path / "exports"
    monkeypatch.setenv("HPZO_OUTPUT_DIR", str(directory))
    return directory


@pytest.fixture
def experiment_file(tmp_path):
    """Writes a YAML experiment file and returns its path."""
    import yaml

    def _write(payload, name="experiment.yml"):
        path = tmp_path / name
        path.write_text(yaml.safe_dump(payload))
        return str(path)

    return _write
