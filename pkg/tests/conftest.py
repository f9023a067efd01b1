import pytest

from dephaseprobe.models import SIGMA_X, ProbeState


@pytest.fixture
def plus_state() -> ProbeState:
    return ProbeState.maximally_coherent((0.0, 1.0))


@pytest.fixture
def sigma_x():
    return SIGMA_X


@pytest.fixture
def single_thread(monkeypatch):
    """
    Run grid evaluation inline.
    """
    monkeypatch.setenv("dephaseprobe_threads", "1")
    yield
