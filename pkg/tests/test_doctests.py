import doctest

import pytest

import qlcm.cyclotomic
import qlcm.numthy
import qlcm.polyarith
import qlcm.qcalc


@pytest.mark.parametrize(
    "mod",
    [qlcm.numthy, qlcm.polyarith, qlcm.cyclotomic, qlcm.qcalc],
    ids=lambda m: m.__name__,
)
def test_module_doctests(mod):
    result = doctest.testmod(mod)
    assert result.attempted > 0
    assert result.failed == 0
