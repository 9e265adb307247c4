import random

import pytest

from twistcheck.curves import CurveModel, base_curve


@pytest.fixture(scope="session")
def x15() -> CurveModel:
    return base_curve("15")


@pytest.fixture(scope="session")
def x21() -> CurveModel:
    return base_curve("21")


def random_curves(count: int, seed: int = 42, coeff_bound: int = 9) -> list[CurveModel]:
    """Deterministic corpus of nonsingular small-coefficient curves."""
    rng = random.Random(seed)
    out: list[CurveModel] = []
    while len(out) < count:
        a = tuple(rng.randint(-coeff_bound, coeff_bound) for _ in range(5))
        E = CurveModel.from_ainvs(a)
        if E.discriminant != 0:
            out.append(E)
    return out
