import pytest

from qmackey import groups


@pytest.fixture(scope="session")
def corpus_groups():
    return groups.corpus()


@pytest.fixture(scope="session")
def corpus_lattices(corpus_groups):
    return {name: groups.SubgroupLattice(G) for name, G in corpus_groups.items()}


@pytest.fixture(scope="session")
def c6_lattice(corpus_lattices):
    return corpus_lattices["C6"]


@pytest.fixture(scope="session")
def s4_lattice(corpus_lattices):
    return corpus_lattices["S4"]


@pytest.fixture(scope="session")
def s3_lattice(corpus_lattices):
    return corpus_lattices["S3"]


@pytest.fixture(scope="session")
def c2_lattice(corpus_lattices):
    return corpus_lattices["C2"]
