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

from pathlib import Path

import pytest

from hec_trisolve.bench.specs import (
    BenchRow,
    MatrixSource,
    PreconditionerSpec,
    load_experiment,
    parse_ilu_method,
)
from hec_trisolve.precond import IluMethod, PreconditionerKind

_DATA_DIR = Path(__file__).parent / 'data'


def test_poisson_source() -> None:
    source = MatrixSource.parse('poisson:4,5,6')
    assert source.kind == 'poisson'
    assert source.grid == (4, 5, 6)
    assert str(source) == 'poisson:4,5,6'
    a = source.load()
    assert a.n_rows == 120


def test_matrix_market_source() -> None:
    path = str(_DATA_DIR / 'identity2.mtx')
    source = MatrixSource.parse(f'mm:{path}')
    assert source.kind == 'mm'
    assert source.path == path
    assert str(source) == f'mm:{path}'
    assert source.load().nnz == 2


@pytest.mark.parametrize('text', ['poisson:4,5', 'mm:', 'foo.mtx', ''])
def test_invalid_source(text: str) -> None:
    with pytest.raises(ValueError):
        MatrixSource.parse(text)


def test_ilu_methods() -> None:
    assert parse_ilu_method('ilu0').method is IluMethod.ILU0
    assert parse_ilu_method('ILU(0)').method is IluMethod.ILU0
    for text in ('iluk:2', 'iluk(2)', 'ilu(2)'):
        params = parse_ilu_method(text)
        assert params.method is IluMethod.ILUK
        assert params.fill_level == 2
    for text in ('ilut(7,0.1)', 'ilut:7,0.1', 'ilut( 7, 1e-1 )'):
        params = parse_ilu_method(text)
        assert params.method is IluMethod.ILUT
        assert params.max_fill == 7
        assert params.drop_tol == 0.1


@pytest.mark.parametrize(
    'text, kind, label',
    [
        ('none', None, 'none'),
        ('bilu0', PreconditionerKind.BILU0, 'BILU0'),
        ('BILU0', PreconditionerKind.BILU0, 'BILU0'),
        ('ilu0', PreconditionerKind.BILU0, 'BILU0'),
        ('biluk:2', PreconditionerKind.BILUK, 'BILU(2)'),
        ('bilut:7,0.1', PreconditionerKind.BILUT, 'BILUT(7,0.1)'),
        ('bilut(7,0.01)', PreconditionerKind.BILUT, 'BILUT(7,0.01)'),
        ('ilut(7,0.1)', PreconditionerKind.BILUT, 'BILUT(7,0.1)'),
        ('ras', PreconditionerKind.RAS, 'RAS'),
        ('ras:ilu0', PreconditionerKind.RAS, 'RAS'),
        ('ras:iluk:1', PreconditionerKind.RAS, 'RAS-ILU(1)'),
        ('ras:ilut(5,0.05)', PreconditionerKind.RAS, 'RAS-ILUT(5,0.05)'),
    ],
)
def test_preconditioner_specs(text: str, kind, label: str) -> None:
    spec = PreconditionerSpec.parse(text)
    assert spec.kind is kind
    assert spec.label == label


@pytest.mark.parametrize(
    'text', ['bogus', 'biluk:x', 'bilut(7)', 'bilut(7,abc)', 'ras:foo']
)
def test_invalid_preconditioner_spec(text: str) -> None:
    with pytest.raises(ValueError):
        PreconditionerSpec.parse(text)


def test_build(laplacian_1d) -> None:
    a = laplacian_1d(16)
    assert PreconditionerSpec.parse('none').build(a, 4) is None
    m = PreconditionerSpec.parse('ras').build(a, 4, overlap=1)
    assert m is not None
    assert m.n == 16
    assert m.n_blocks == 4
    assert m.kind is PreconditionerKind.RAS


def test_bench_row_aliases() -> None:
    row = BenchRow(
        pre='BILU0',
        blocks=16,
        solve_cpu_s=2.0,
        solve_par_s=1.0,
        solve_speedup=2.0,
        pre_cpu_s=0.2,
        pre_par_s=0.1,
        pre_speedup=2.0,
        iters=12,
        converged=True,
    )
    assert row.preconditioner == 'BILU0'
    assert row.iterations == 12
    assert list(row.model_dump(by_alias=True)) == [
        'pre',
        'blocks',
        'solve_cpu_s',
        'solve_par_s',
        'solve_speedup',
        'pre_cpu_s',
        'pre_par_s',
        'pre_speedup',
        'iters',
        'converged',
    ]


def test_packaged_experiments() -> None:
    poisson = load_experiment('poisson_table')
    assert poisson.matrix == 'poisson:40,40,40'
    assert [run.blocks for run in poisson.runs] == [
        16, 128, 512, 16, 128, 512, 256, 2048
    ]
    labels = [PreconditionerSpec.parse(r.precond).label for r in poisson.runs]
    assert labels[3] == 'BILUT(7,0.1)'
    assert labels[-1] == 'RAS'
    assert all(r.overlap == 1 for r in poisson.runs if r.precond == 'ras')
    atmosmodd = load_experiment('atmosmodd_table')
    assert MatrixSource.parse(atmosmodd.matrix).kind == 'mm'


def test_experiment_file() -> None:
    spec = load_experiment(str(_DATA_DIR / 'experiment.json'))
    assert spec.name == 'small'
    assert len(spec.runs) == 2
    assert spec.runs[0].overlap == 0


def test_unknown_experiment() -> None:
    with pytest.raises(ValueError):
        load_experiment('no_such_table')
