import random

import pytest

from fuzzyvault import (
    FamilyTemplate,
    LockParams,
    MultiFuzzySet,
    SubsetDescriptor,
    build_locking_set,
    partition_field,
)

Q_DESK = 65537

TRI = FamilyTemplate("triangular", (1.0, 1.0))
GAU = FamilyTemplate("gaussian", (0.5, 0.5))
SIG = FamilyTemplate("sigmoid", (1.0, 1.0, 0.9, 4.0))
TRAP = FamilyTemplate("trapezoidal", (0.5, 1.0, 1.0))

ALL_TEMPLATES = [TRI, GAU, SIG, TRAP]


def desk_field(q=Q_DESK):
    """Four-family field partition used across the suite."""
    quarter = q // 4
    return partition_field(
        q, [quarter, quarter, quarter, q - 3 * quarter], ALL_TEMPLATES
    )


def desk_locking_set(field_mfs, seed, t_mfk=12, extra=(6, 6), k_template=TRI):
    """Locking set with t_mfk triangular elements plus two decoy groups."""
    rnd = random.Random(seed)
    total = t_mfk + sum(extra)
    elems = rnd.sample(range(field_mfs.q), total)
    groups = [(elems[:t_mfk], k_template)]
    start = t_mfk
    for size, template in zip(extra, [GAU, SIG]):
        groups.append((elems[start:start + size], template))
        start += size
    return build_locking_set(field_mfs, groups)


def desk_params(seed, t=24, t_mfk=12, r=300, k=8, rho=0.2, delta=0.25):
    return LockParams(t=t, k_subset=0, t_mfk=t_mfk, r=r, k=k,
                      rho=rho, delta=delta, seed=seed)


@pytest.fixture(scope="session")
def field_mfs():
    return desk_field()
