import time
from pathlib import Path

import pytest

from charmod import corpus as corpus_mod
from charmod.cmr import load

FIXTURES = Path(__file__).resolve().parent.parent / "src" / "charmod" / "fixtures"


@pytest.fixture(scope="session")
def veronese_doc():
    return load(FIXTURES / "veronese.cmr")


@pytest.fixture(scope="session")
def e2_doc():
    return load(FIXTURES / "e2.cmr")


@pytest.fixture(scope="session")
def hypersurface_doc():
    return load(FIXTURES / "hypersurface.cmr")


@pytest.fixture(scope="session")
def stanley_reisner_doc():
    return load(FIXTURES / "stanley_reisner.cmr")


@pytest.fixture(scope="session")
def mixed_corpus():
    """The acceptance corpus: profile mixed, seed 7, 50 instances."""
    return corpus_mod.generate_corpus(7, 50, "mixed")


@pytest.fixture(scope="session")
def mixed_battery(mixed_corpus):
    """Battery reports over the acceptance corpus.

    Split identities are exercised on the first 30 instances (the
    acceptance quota); the cheaper checks run on all 50.  The elapsed
    wall time for the whole run is attached for the timing criteria.
    """
    t0 = time.perf_counter()
    reports = []
    for i, doc in enumerate(mixed_corpus):
        reports.append(corpus_mod.corpus_battery(
            doc, corpus_mod.instance_id("mixed", 7, i), split=(i < 30)))
    elapsed = time.perf_counter() - t0
    return {"reports": reports, "elapsed": elapsed}
