from pathlib import Path

import pytest

REPO = Path(__file__).resolve().parents[1]
MODEL_NAMES = ("alexnet", "resnet20", "svhn_cnn")


@pytest.fixture(scope="session")
def repo_root() -> Path:
    return REPO


@pytest.fixture(scope="session")
def model_paths(repo_root) -> dict:
    return {name: repo_root / "models" / f"{name}.json" for name in MODEL_NAMES}


@pytest.fixture(scope="session")
def baselines_dir(repo_root) -> Path:
    return repo_root / "baselines"


@pytest.fixture(scope="session")
def reference_config_path(repo_root) -> Path:
    return repo_root / "configs" / "reference.json"


@pytest.fixture(scope="session")
def space_path(repo_root) -> Path:
    return repo_root / "spaces" / "grid_small.json"
