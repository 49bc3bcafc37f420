"""Optional long-running reproduction: rank-5 rows and the E-type subquotients.

The E-type cases take up to a minute each and only run with CHEVORBITS_LONG=1.
"""

import os

import pytest

from chevorbits.counter import assemble_k
from chevorbits.tables import CLASS_NUMBERS, SUBQUOTIENT_CLASS_NUMBERS, expected_polynomial

from conftest import cached_param

long_only = pytest.mark.skipif(not os.environ.get("CHEVORBITS_LONG"), reason="set CHEVORBITS_LONG=1")

RANK_5 = sorted(k for k in CLASS_NUMBERS if k[1] == 5)
E_LEVELS = sorted(k for k in SUBQUOTIENT_CLASS_NUMBERS if k[0] == "E")


@pytest.mark.slow
@pytest.mark.parametrize("t,r", RANK_5, ids=lambda x: str(x))
def test_rank_5_rows(t, r):
    p = cached_param(t, r)
    assert p.excluded_primes <= p.datum.bad_primes
    assert assemble_k(p).total == expected_polynomial(t, r)


@pytest.mark.slow
@long_only
@pytest.mark.parametrize("t,r,level", E_LEVELS, ids=lambda x: str(x))
def test_e_type_subquotients(t, r, level):
    p = cached_param(t, r, level=level)
    assert p.excluded_primes <= p.datum.bad_primes
    assert assemble_k(p).total == expected_polynomial(t, r, level)
