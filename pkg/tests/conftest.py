from fractions import Fraction

import pytest
from hypothesis import settings

from toroidal.galgebra import abelian, sl2
from toroidal.scalars import ParamContext

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def g_abelian():
    return abelian()


@pytest.fixture(scope="session")
def g_sl2():
    return sl2()


def ctx_for(eps, mu=0, ell=1, alpha=0, beta=0, g=None):
    return ParamContext(eps, mu=Fraction(mu), ell=Fraction(ell), alpha=Fraction(alpha),
                        beta=Fraction(beta), base_algebra=g)
