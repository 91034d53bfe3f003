import pytest

from maxitive import (FinitePoset, FiniteSpace, MaxitiveMeasure, TailDensity)


@pytest.fixture
def chain2():
    return FinitePoset.chain(2)


@pytest.fixture
def chain3():
    return FinitePoset.chain(3)


@pytest.fixture
def sier():
    return FiniteSpace.sierpinski()


@pytest.fixture
def indisc():
    return FiniteSpace.indiscrete(("a", "b"))


@pytest.fixture
def mu1(sier, chain3):
    # mass on the open point only; fails every outer form
    return MaxitiveMeasure.from_density(sier, chain3, {"a": "0", "b": "1"})


@pytest.fixture
def mu2(sier, chain3):
    return MaxitiveMeasure.from_density(sier, chain3, {"a": "1", "b": "0"})


@pytest.fixture
def eta(chain2):
    # no pointwise mass, yet every infinite set weighs 1
    return MaxitiveMeasure.from_tail(TailDensity(chain2, {}, 0, 1))


@pytest.fixture
def theta(chain2):
    return MaxitiveMeasure.from_tail(TailDensity(chain2, {0: 1}, 0, 0))


@pytest.fixture
def rho(chain3):
    return MaxitiveMeasure.from_tail(TailDensity(chain3, {0: 2}, 1, 2))
