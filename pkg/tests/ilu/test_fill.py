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

from hec_trisolve.errors import ZeroPivotError
from hec_trisolve.formats import CsrMatrix, csr_from_triples
from hec_trisolve.ilu import fill_pattern, ilu0, ilu_k


def _pattern(a: CsrMatrix) -> set:
    return set(zip(a.row_indices().tolist(), a.col_indices.tolist()))


def _arrow(n: int) -> CsrMatrix:
    """Full first row and column plus the diagonal"""
    triples = [(i, i, float(n)) for i in range(n)]
    triples += [(0, j, 1.0) for j in range(1, n)]
    triples += [(i, 0, 1.0) for i in range(1, n)]
    return csr_from_triples(n, n, triples)


def _assert_same(a: CsrMatrix, b: CsrMatrix) -> None:
    assert a.row_offsets.tolist() == b.row_offsets.tolist()
    assert a.col_indices.tolist() == b.col_indices.tolist()
    assert a.values.tolist() == b.values.tolist()


def test_level_zero_is_ilu0(diagonally_dominant) -> None:
    for n in (10, 50, 120):
        a = diagonally_dominant(n, 0.05)
        f, g = ilu_k(a, 0), ilu0(a)
        _assert_same(f.l, g.l)
        _assert_same(f.u, g.u)


def test_arrow_fill() -> None:
    a = _arrow(4)
    assert _pattern(fill_pattern(a, 0)) == _pattern(a)
    # Eliminating row 0 fills the whole trailing block at level 1
    full = {(i, j) for i in range(4) for j in range(4)}
    assert _pattern(fill_pattern(a, 1)) == full
    f = ilu_k(a, 1)
    np.testing.assert_allclose(
        f.l.to_dense() @ f.u.to_dense(), a.to_dense(), atol=1e-12
    )


def test_fill_levels_add_up() -> None:
    # A tridiagonal pattern has no fill, entries (2, 0) and (0, 3) create
    # some
    n = 5
    triples = [(i, i, 4.0) for i in range(n)]
    triples += [(i + 1, i, -1.0) for i in range(n - 1)]
    triples += [(i, i + 1, -1.0) for i in range(n - 1)]
    triples += [(2, 0, -1.0), (0, 3, -1.0)]
    a = csr_from_triples(n, n, triples)
    level_1 = _pattern(fill_pattern(a, 1)) - _pattern(a)
    # (1, 3) from 1 <- 0 -> 3. (2, 3) is stored in A already.
    assert level_1 == {(1, 3)}
    level_2 = _pattern(fill_pattern(a, 2)) - _pattern(a) - level_1
    assert level_2 == set()


def test_fill_positions_hold_zeros_before_factoring() -> None:
    a = _arrow(3)
    p = fill_pattern(a, 1)
    dense = p.to_dense()
    assert dense[1, 2] == 0.0 and dense[2, 1] == 0.0
    assert p.nnz == 9


def test_monotone_pattern_growth(diagonally_dominant) -> None:
    a = diagonally_dominant(80, 0.04)
    previous = _pattern(ilu_k(a, 0).l) | _pattern(ilu_k(a, 0).u)
    for k in range(1, 4):
        f = ilu_k(a, k)
        current = _pattern(f.l) | _pattern(f.u)
        assert previous <= current
        previous = current


def test_more_fill_is_more_accurate(diagonally_dominant) -> None:
    a = diagonally_dominant(60, 0.08)
    dense = a.to_dense()
    errors = []
    for k in (0, 1, 60):
        f = ilu_k(a, k)
        errors.append(
            np.linalg.norm(dense - f.l.to_dense() @ f.u.to_dense())
        )
    assert errors[0] > errors[2]
    assert errors[2] <= 1e-10


def test_errors() -> None:
    with pytest.raises(ValueError):
        ilu_k(CsrMatrix.identity(2), -1)
    singular = csr_from_triples(
        2, 2, [(0, 0, 1.0), (0, 1, 1.0), (1, 0, 1.0), (1, 1, 1.0)]
    )
    with pytest.raises(ZeroPivotError):
        ilu_k(singular, 2)
