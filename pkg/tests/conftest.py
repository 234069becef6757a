import math

import pytest

from qblotto import Scenario


@pytest.fixture
def worked_example() -> Scenario:
    """Worked three-player example: budgets 6/4/3 over two battlefields."""
    return Scenario.create(
        totals=(6.0, 4.0, 3.0),
        allocations=((3.0, 3.0), (3.0, 1.0), (0.0, 3.0)),
        gamma=math.pi / 2,
    )
