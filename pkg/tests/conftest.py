import itertools

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from densecsp import kernels

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(params=sorted(kernels.available_backends()))
def backend(request):
    return request.param


def naive_evaluate(inst, phi):
    """Edge-by-edge count, independent of the vectorised evaluator."""
    count = 0
    for (u, v), table in zip(inst.edges.tolist(), inst.tables):
        count += bool(table[phi[u], phi[v]])
    return count


def all_assignments(n, q):
    return itertools.product(range(q), repeat=n)


def naive_opt(inst):
    """Best count and lexicographically smallest maximiser, by plain enumeration."""
    best, arg = -1, None
    for phi in all_assignments(inst.n, inst.q):
        s = naive_evaluate(inst, phi)
        if s > best:
            best, arg = s, phi
    return best, np.array(arg)
