from datetime import date
from pathlib import Path

import numpy as np
import pytest

from lockplan import parse_case_archive
from lockplan.forecast import PolyModel
from lockplan.resources import CapacityProfile, ResourceSpec

DATA_DIR = Path(__file__).resolve().parents[1] / "src" / "lockplan" / "data"

# Published Delhi model: quartic over the 60-day window ending Apr 6 2021
PAPER_COEFFS = np.array([0.006, -0.518, 16.088, -175.330, 1344.983])
OXYGEN_FACTOR = 0.00817
OXYGEN_CAP_MT = 480.0
WINDOW_END = date(2021, 4, 6)


@pytest.fixture(scope="session")
def delhi_csv_path():
    return DATA_DIR / "delhi_cases.csv"


@pytest.fixture(scope="session")
def delhi_scenario_path():
    return DATA_DIR / "delhi_scenario.json"


@pytest.fixture(scope="session")
def delhi_cases(delhi_csv_path):
    return parse_case_archive(delhi_csv_path.read_bytes(), "csv",
                              region="Delhi")


@pytest.fixture(scope="session")
def paper_model():
    return PolyModel(coefficients=PAPER_COEFFS, fit_window=(1, 60),
                     target="active_cases", weight_scheme="uniform",
                     residual_rms=0.0)


@pytest.fixture
def oxygen_resource():
    return ResourceSpec(id="oxygen", name="Medical oxygen", unit="MT/day",
                        requirement_factor=OXYGEN_FACTOR,
                        availability=CapacityProfile(((1, OXYGEN_CAP_MT),)))


def horner_oracle(coeffs, t):
    """Independent polynomial evaluation: explicit power sum."""
    degree = len(coeffs) - 1
    return sum(float(c) * float(t) ** (degree - i)
               for i, c in enumerate(coeffs))


def gauss_solve(A, b):
    """Independent dense solver: elementary Gaussian elimination with
    partial pivoting; no numpy.linalg. Works on floats or Fractions."""
    n = len(b)
    M = [[A[i][j] for j in range(n)] + [b[i]] for i in range(n)]
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(M[r][col]))
        if abs(M[pivot][col]) == 0.0:
            raise ZeroDivisionError("singular system in oracle")
        M[col], M[pivot] = M[pivot], M[col]
        for row in range(col + 1, n):
            factor = M[row][col] / M[col][col]
            for k in range(col, n + 1):
                M[row][k] -= factor * M[col][k]
    x = [0 * b[0]] * n
    for row in range(n - 1, -1, -1):
        acc = M[row][n] - sum(M[row][k] * x[k] for k in range(row + 1, n))
        x[row] = acc / M[row][row]
    return x


def normal_equations_fit(ts, ys, ws, degree):
    """Independent weighted LS: assemble and solve (X^T W X) a = X^T W y
    by direct arithmetic, coefficients highest power first."""
    n = degree + 1
    powers = [[t ** (degree - j) for j in range(n)] for t in ts]
    A = [[sum(w * row[i] * row[j] for w, row in zip(ws, powers))
          for j in range(n)] for i in range(n)]
    b = [sum(w * row[i] * y for w, row, y in zip(ws, powers, ys))
         for i in range(n)]
    return gauss_solve(A, b)
