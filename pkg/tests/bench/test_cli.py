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

import csv
from pathlib import Path

import pytest

from hec_trisolve.bench.cli import build_parser, main
from hec_trisolve.bench.specs import CSV_COLUMNS
from hec_trisolve.formats import WidthPolicy

_DATA_DIR = Path(__file__).parent / 'data'

_SMALL = ['--matrix', 'poisson:6,6,6', '--workers', '2', '--repeats', '1']


def test_defaults() -> None:
    args = build_parser().parse_args(['--matrix', 'poisson:2,2,2'])
    assert args.precond == 'bilu0'
    assert args.blocks == 1
    assert args.overlap == 0
    assert args.restart == 20
    assert args.tol == 1e-6
    assert args.max_iters == 10000
    assert args.ell_width == WidthPolicy.auto()
    assert args.out is None


def test_ell_width() -> None:
    args = build_parser().parse_args(['--ell-width', '3'])
    assert args.ell_width == WidthPolicy.fixed(3)
    with pytest.raises(SystemExit):
        build_parser().parse_args(['--ell-width', 'wide'])


def test_single_run(capsys) -> None:
    assert main(_SMALL + ['--precond', 'bilu0', '--blocks', '4']) == 0
    out = capsys.readouterr().out
    assert 'solve_speedup' in out
    assert 'BILU0' in out


def test_csv_output(tmp_path: Path) -> None:
    path = tmp_path / 'out.csv'
    argv = _SMALL + ['--precond', 'ras', '--blocks', '4', '--overlap', '1']
    assert main(argv + ['--out', str(path)]) == 0
    with open(path, encoding='utf-8', newline='') as f:
        reader = csv.DictReader(f)
        assert reader.fieldnames == CSV_COLUMNS
        rows = list(reader)
    assert len(rows) == 1
    assert rows[0]['pre'] == 'RAS'
    assert rows[0]['blocks'] == '4'
    assert rows[0]['converged'] == 'True'


def test_experiment(tmp_path: Path) -> None:
    path = tmp_path / 'table.csv'
    argv = [
        '--experiment',
        str(_DATA_DIR / 'experiment.json'),
        '--workers',
        '2',
        '--repeats',
        '1',
        '--out',
        str(path),
    ]
    assert main(argv) == 0
    with open(path, encoding='utf-8', newline='') as f:
        assert len(list(csv.DictReader(f))) == 2


@pytest.mark.parametrize(
    'argv',
    [
        _SMALL + ['--precond', 'bogus'],
        _SMALL + ['--precond', 'bilu0', '--overlap', '1'],
        ['--matrix', 'poisson:0,1,1'],
        ['--matrix', 'mm:does_not_exist.mtx'],
        ['--experiment', 'no_such_table'],
    ],
)
def test_errors(argv) -> None:
    assert main(argv) == 1


def test_missing_matrix() -> None:
    with pytest.raises(SystemExit) as e:
        main([])
    assert e.value.code == 2
