"""
Pytest configuration and fixtures
"""

from io import StringIO
from pathlib import Path

import pytest
from rich.console import Console

from pigraph.analysis.lts import build_lts
from pigraph.syntax.compiler import compile_graph
from pigraph.syntax.parser import parse, parse_file

MODELS_DIR = Path(__file__).parent / "fixtures" / "models"


def _corpus() -> list:
    return sorted(p.stem for p in MODELS_DIR.glob("*.pig"))


def pytest_generate_tests(metafunc):
    if "corpus_model" in metafunc.fixturenames:
        metafunc.parametrize("corpus_model", _corpus())


@pytest.fixture
def corpus_names():
    """Stems of every corpus model"""
    return _corpus()


@pytest.fixture
def model_path():
    """Absolute path of a corpus model by stem"""
    def _path(name: str) -> str:
        return str(MODELS_DIR / f"{name}.pig")
    return _path


@pytest.fixture
def compiled(model_path):
    """Initial configuration of a corpus model"""
    def _compile(name: str, clock: str = "causal"):
        return compile_graph(parse_file(model_path(name)), clock)
    return _compile


@pytest.fixture
def compile_source():
    """Initial configuration of an inline model"""
    def _compile(source: str, clock: str = "causal"):
        return compile_graph(parse(source), clock)
    return _compile


@pytest.fixture
def lts_of(compiled):
    """Transition system of a corpus model"""
    def _build(name: str, clock: str = "causal", **kwargs):
        return build_lts(compiled(name, clock), **kwargs)
    return _build


@pytest.fixture
def console_buffer():
    """Plain console writing into a string buffer"""
    buffer = StringIO()
    console = Console(file=buffer, color_system=None, width=200, soft_wrap=True)
    return console, buffer
