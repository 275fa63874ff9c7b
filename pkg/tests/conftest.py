import math

import numpy as np
import pytest

from lfsym.families import Family
from lfsym.satake import LocalCoefficients


class ZeroFamily(Family):
    """Stub with identically vanishing coefficients (CM-like edge case)."""

    def __init__(self, n_members: int = 5, log_cond: float = math.log(50)):
        self.n = n_members
        self._logc = log_cond
        self.family_id = f"zero({n_members})"
        self.degree = 2

    def iter_members(self):
        return iter(range(self.n))

    def local_coefficients(self, member, p, nu_max):
        return LocalCoefficients(p=p, degree=2, b=np.zeros(nu_max))

    def log_conductor(self, member):
        return self._logc


@pytest.fixture
def zero_family():
    return ZeroFamily()
