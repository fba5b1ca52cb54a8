import json
from pathlib import Path

import pytest

from ecokg import cli
from ecokg.graph import PrefixMap

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def prefixes() -> PrefixMap:
    return PrefixMap.from_tsv((FIXTURES / "prefixes.tsv").read_text())


def run_cli(*argv: str) -> int:
    return cli.main(list(argv))


@pytest.fixture(scope="session")
def pipeline_dir(tmp_path_factory) -> Path:
    """One full `update` run shared by tests that only read its artifacts."""
    out = tmp_path_factory.mktemp("pipeline")
    code = run_cli("--config", str(FIXTURES / "config.json"), "update", "--out", str(out))
    assert code == 0, "pipeline build failed"
    return out


def read_summary(out_dir: Path, command: str) -> dict:
    return json.loads((out_dir / f"{command}.summary.json").read_text())
