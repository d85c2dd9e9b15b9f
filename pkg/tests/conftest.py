import json
import sys

import pytest

from antipow import UniformMorphism, fixed_point, parse_morphism

sys.path.insert(0, str(__import__("pathlib").Path(__file__).parent))

TM_TEXT = "0:01,1:10"
PD_TEXT = "0:01,1:00"
R3_TEXT = "0:010,1:011"


@pytest.fixture(scope="session")
def tm() -> UniformMorphism:
    return parse_morphism(TM_TEXT)


@pytest.fixture(scope="session")
def pd() -> UniformMorphism:
    return parse_morphism(PD_TEXT)


@pytest.fixture(scope="session")
def r3() -> UniformMorphism:
    return parse_morphism(R3_TEXT)


@pytest.fixture()
def tm_stream(tm):
    return fixed_point(tm)


@pytest.fixture()
def pd_stream(pd):
    return fixed_point(pd)


@pytest.fixture()
def r3_stream(r3):
    return fixed_point(r3)


def run_cli(capsys, argv) -> tuple[int, str, str]:
    """Run the CLI in-process; returns (exit_code, stdout, stderr)."""
    from antipow.cli import main

    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def cli_json(capsys, argv):
    code, out, err = run_cli(capsys, argv)
    assert code == 0, f"cli {argv} exited {code}: {err}"
    return json.loads(out)
