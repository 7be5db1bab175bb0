##############################################################################
# Copyright 2026 The hec-trisolve Authors
#
#    Licensed under the Apache License, Version 2.0 (the "License");
#    you may not use this file except in compliance with the License.
#    You may obtain a copy of the License at
#
#        http://www.apache.org/licenses/LICENSE-2.0
#
#    Unless required by applicable law or agreed to in writing, software
#    distributed under the License is distributed on an "AS IS" BASIS,
#    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#    See the License for the specific language governing permissions and
#    limitations under the License.
##############################################################################

import numpy as np
import pytest
import scipy.sparse.linalg

from hec_trisolve.errors import (
    LevelScheduleError,
    MatrixFormatError,
    SingularTriangularError,
)
from hec_trisolve.formats import CsrMatrix, WidthPolicy, csr_from_triples
from hec_trisolve.schedule import LevelSchedule
from hec_trisolve.triangular import (
    PreparedTriangular,
    TriangularKind,
    prepare_lower,
    prepare_upper,
    serial_backward_solve,
    serial_forward_solve,
    solve,
)
from hec_trisolve.triangular.solve import _executor, split_range


def _relative_error(x: np.ndarray, reference: np.ndarray) -> float:
    return float(
        np.max(np.abs(x - reference)) / max(np.max(np.abs(reference)), 1e-300)
    )


def test_hand_computed_lower() -> None:
    # L = [[2, 0, 0], [1, 1, 0], [0, 3, 3]], x = [1, 2, 3]
    l = csr_from_triples(
        3,
        3,
        [(0, 0, 2.0), (1, 0, 1.0), (1, 1, 1.0), (2, 1, 3.0), (2, 2, 3.0)],
    )
    b = np.array([2.0, 3.0, 15.0])
    np.testing.assert_allclose(solve(prepare_lower(l), b), [1.0, 2.0, 3.0])
    np.testing.assert_allclose(serial_forward_solve(l, b), [1.0, 2.0, 3.0])


def test_hand_computed_upper() -> None:
    # U = [[1, 2], [0, 4]], x = [1, 1]
    u = csr_from_triples(2, 2, [(0, 0, 1.0), (0, 1, 2.0), (1, 1, 4.0)])
    b = np.array([3.0, 4.0])
    np.testing.assert_allclose(solve(prepare_upper(u), b), [1.0, 1.0])
    np.testing.assert_allclose(serial_backward_solve(u, b), [1.0, 1.0])


def test_identity() -> None:
    b = np.array([1.5, -2.0, 7.0])
    assert solve(prepare_lower(CsrMatrix.identity(3)), b).tolist() == [
        1.5,
        -2.0,
        7.0,
    ]


@pytest.mark.parametrize('seed', range(100))
def test_lower_matches_serial_substitution(
    random_lower, rng: np.random.Generator, seed: int
) -> None:
    n = [10, 100, 400, 1000][seed % 4]
    density = [0.005, 0.01, 0.05, 0.2][(seed // 4) % 4]
    if n == 1000 and density == 0.2:
        density = 0.02
    l = random_lower(n, density)
    b = rng.standard_normal(n)
    x = solve(prepare_lower(l), b, workers=1 + seed % 3)
    assert _relative_error(x, serial_forward_solve(l, b)) <= 1e-12


@pytest.mark.parametrize('seed', range(100))
def test_upper_matches_serial_substitution(
    random_upper, rng: np.random.Generator, seed: int
) -> None:
    n = [10, 100, 400, 1000][seed % 4]
    density = [0.005, 0.01, 0.05, 0.2][(seed // 4) % 4]
    if n == 1000 and density == 0.2:
        density = 0.02
    u = random_upper(n, density)
    b = rng.standard_normal(n)
    x = solve(prepare_upper(u), b, workers=1 + seed % 3)
    assert _relative_error(x, serial_backward_solve(u, b)) <= 1e-12


def test_matches_scipy(random_lower, rng: np.random.Generator) -> None:
    l = random_lower(300, 0.03)
    b = rng.standard_normal(300)
    expected = scipy.sparse.linalg.spsolve_triangular(
        l.to_scipy(), b, lower=True
    )
    np.testing.assert_allclose(
        solve(prepare_lower(l), b), expected, rtol=1e-12, atol=1e-12
    )


@pytest.mark.parametrize('width', [None, 0, 1, 2, 10])
def test_width_does_not_change_result(
    random_lower, rng: np.random.Generator, width
) -> None:
    l = random_lower(200, 0.05)
    b = rng.standard_normal(200)
    reference = solve(prepare_lower(l, WidthPolicy.fixed(0)), b)
    policy = WidthPolicy.auto() if width is None else WidthPolicy.fixed(width)
    assert solve(prepare_lower(l, policy), b).tolist() == reference.tolist()


def test_result_does_not_depend_on_workers(
    random_lower, random_upper, rng: np.random.Generator
) -> None:
    l = prepare_lower(random_lower(500, 0.01))
    u = prepare_upper(random_upper(500, 0.01))
    b = rng.standard_normal(500)
    for p in (l, u):
        reference = solve(p, b, workers=1)
        for workers in (2, 3, 8):
            assert solve(p, b, workers=workers).tolist() == reference.tolist()


def test_check_levels_accepts_valid_schedule(
    random_lower, rng: np.random.Generator
) -> None:
    l = random_lower(300, 0.02)
    b = rng.standard_normal(300)
    p = prepare_lower(l, WidthPolicy.fixed(1))
    assert (
        solve(p, b, workers=4, check_levels=True).tolist()
        == solve(p, b, workers=4).tolist()
    )


def test_check_levels_detects_bad_schedule() -> None:
    # A chain 0 <- 1 forced into a single level
    l = csr_from_triples(2, 2, [(0, 0, 1.0), (1, 0, 1.0), (1, 1, 1.0)])
    good = prepare_lower(l, WidthPolicy.fixed(0))
    bad = PreparedTriangular(
        kind=TriangularKind.LOWER,
        hec=good.hec,
        schedule=LevelSchedule(
            n=2,
            level_of=np.array([1, 1]),
            perm=np.array([0, 1]),
            inv_perm=np.array([0, 1]),
            level_starts=np.array([0, 2]),
            nlev=1,
        ),
        reversal_applied=False,
        n=2,
    )
    with pytest.raises(LevelScheduleError):
        solve(bad, np.ones(2), check_levels=True)


def test_solve_errors() -> None:
    p = prepare_lower(CsrMatrix.identity(3))
    with pytest.raises(MatrixFormatError):
        solve(p, np.ones(2))
    with pytest.raises(ValueError):
        solve(p, np.ones(3), workers=0)


def test_serial_errors() -> None:
    upper = csr_from_triples(2, 2, [(0, 0, 1.0), (0, 1, 1.0), (1, 1, 1.0)])
    with pytest.raises(MatrixFormatError):
        serial_forward_solve(upper, np.ones(2))
    lower = csr_from_triples(2, 2, [(0, 0, 1.0), (1, 0, 1.0), (1, 1, 1.0)])
    with pytest.raises(MatrixFormatError):
        serial_backward_solve(lower, np.ones(2))
    singular = csr_from_triples(2, 2, [(0, 0, 1.0), (1, 0, 1.0)])
    with pytest.raises(SingularTriangularError) as e:
        serial_forward_solve(singular, np.ones(2))
    assert e.value.row == 1


def test_split_range() -> None:
    assert split_range(0, 10, 3) == [(0, 3), (3, 6), (6, 10)]
    assert split_range(5, 7, 4) == [(5, 6), (6, 7)]
    assert split_range(3, 3, 2) == []


@pytest.mark.parametrize('workers', [1, 4])
def test_large_lower(
    random_lower, rng: np.random.Generator, workers: int
) -> None:
    l = random_lower(2000, 0.002)
    b = rng.standard_normal(2000)
    x = solve(prepare_lower(l), b, workers=workers)
    assert _relative_error(x, serial_forward_solve(l, b)) <= 1e-12


@pytest.mark.parametrize('workers', [1, 4])
def test_large_upper(
    random_upper, rng: np.random.Generator, workers: int
) -> None:
    u = random_upper(2000, 0.002)
    b = rng.standard_normal(2000)
    x = solve(prepare_upper(u), b, workers=workers)
    assert _relative_error(x, serial_backward_solve(u, b)) <= 1e-12


def test_pool_follows_the_worker_count() -> None:
    pool = _executor(3)
    assert _executor(3) is pool
    _executor(2)
    assert _executor(3) is not pool
