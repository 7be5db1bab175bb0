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

import re
from pathlib import Path
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from ..formats.csr import CsrMatrix
from ..formats.hec import WidthPolicy
from ..precond import (
    BlockPreconditioner,
    IluMethod,
    IluParams,
    PreconditionerKind,
    build_preconditioner,
)
from .generators import gen_poisson7
from .matrix_market import read_matrix_market

_PARENT_DIR = Path(__file__).parent

_ILU0 = re.compile(r'^ilu(?:0|\(0\))$')
_ILUK = re.compile(r'^iluk?[:(](\d+)\)?$')
_ILUT = re.compile(r'^ilut[:(]\s*(\d+)\s*,\s*([^,()\s]+)\s*\)?$')
_POISSON = re.compile(r'^poisson:(\d+),(\d+),(\d+)$')


class MatrixSource(BaseModel):
    """Where the benchmark matrix comes from: a generated Poisson problem or
    a MatrixMarket file"""

    model_config = ConfigDict(frozen=True)

    kind: Literal['poisson', 'mm']

    # nx, ny, nz of a Poisson grid
    grid: Optional[Tuple[int, int, int]] = None

    # Path of a MatrixMarket file
    path: Optional[str] = None

    @classmethod
    def parse(cls, text: str) -> 'MatrixSource':
        """Parse `poisson:NX,NY,NZ` or `mm:PATH`"""
        match = _POISSON.match(text.strip())
        if match:
            grid = tuple(int(g) for g in match.groups())
            return cls(kind='poisson', grid=grid)
        if text.startswith('mm:') and len(text) > 3:
            return cls(kind='mm', path=text[3:])
        raise ValueError(
            f'Invalid matrix source {text!r}, expected poisson:NX,NY,NZ or '
            'mm:PATH'
        )

    def load(self) -> CsrMatrix:
        if self.kind == 'poisson':
            assert self.grid is not None
            return gen_poisson7(*self.grid)
        assert self.path is not None
        return read_matrix_market(self.path)

    def __str__(self) -> str:
        if self.kind == 'poisson':
            assert self.grid is not None
            return 'poisson:' + ','.join(str(g) for g in self.grid)
        return f'mm:{self.path}'


def parse_ilu_method(text: str) -> IluParams:
    """Parse a local factorization: ilu0, iluk:K, ilu(K), ilut:P,TOL or
    ilut(P,TOL)."""
    text = text.strip().lower()
    if _ILU0.match(text):
        return IluParams(method=IluMethod.ILU0)
    match = _ILUK.match(text)
    if match:
        return IluParams(
            method=IluMethod.ILUK, fill_level=int(match.group(1))
        )
    match = _ILUT.match(text)
    if match:
        try:
            tol = float(match.group(2))
        except ValueError as e:
            raise ValueError(f'Invalid ILUT tolerance in {text!r}') from e
        return IluParams(
            method=IluMethod.ILUT, max_fill=int(match.group(1)), drop_tol=tol
        )
    raise ValueError(f'Unknown incomplete factorization {text!r}')


_BLOCK_KINDS = {
    IluMethod.ILU0: PreconditionerKind.BILU0,
    IluMethod.ILUK: PreconditionerKind.BILUK,
    IluMethod.ILUT: PreconditionerKind.BILUT,
}


class PreconditionerSpec(BaseModel):
    """A preconditioner choice, as given on the command line"""

    model_config = ConfigDict(frozen=True)

    # None means no preconditioning
    kind: Optional[PreconditionerKind] = None

    ilu: IluParams = IluParams()

    @classmethod
    def parse(cls, text: str) -> 'PreconditionerSpec':
        """Parse a preconditioner spec.

        Accepted forms: none, bilu0, biluk:K, bilut:P,TOL, bilut(P,TOL),
        the same without the leading b (ilut(7,0.1) is block ILUT), ras and
        ras:METHOD where METHOD is a local factorization (ras:ilut(7,0.1)).
        """
        t = text.strip().lower()
        if t == 'none':
            return cls()
        if t == 'ras':
            return cls(kind=PreconditionerKind.RAS)
        if t.startswith('ras:'):
            return cls(
                kind=PreconditionerKind.RAS, ilu=parse_ilu_method(t[4:])
            )
        try:
            ilu = parse_ilu_method(t[1:] if t.startswith('b') else t)
        except ValueError as e:
            raise ValueError(f'Unknown preconditioner {text!r}') from e
        return cls(kind=_BLOCK_KINDS[ilu.method], ilu=ilu)

    @property
    def label(self) -> str:
        """Short name used in result tables: BILU0, BILUT(7,0.1), RAS..."""
        if self.kind is None:
            return 'none'
        ilu = self.ilu
        if self.kind is PreconditionerKind.BILU0:
            return 'BILU0'
        if self.kind is PreconditionerKind.BILUK:
            return f'BILU({ilu.fill_level})'
        if self.kind is PreconditionerKind.BILUT:
            return f'BILUT({ilu.max_fill},{ilu.drop_tol:g})'
        if ilu.method is IluMethod.ILUK:
            return f'RAS-ILU({ilu.fill_level})'
        if ilu.method is IluMethod.ILUT:
            return f'RAS-ILUT({ilu.max_fill},{ilu.drop_tol:g})'
        return 'RAS'

    def build(
        self,
        a: CsrMatrix,
        blocks: int,
        overlap: int = 0,
        width_policy: WidthPolicy = WidthPolicy.auto(),
    ) -> Optional[BlockPreconditioner]:
        if self.kind is None:
            return None
        return build_preconditioner(
            a, self.kind, blocks, overlap, self.ilu, width_policy
        )


CSV_COLUMNS = [
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


class BenchRow(BaseModel):
    """One row of a result table. The aliases are the CSV column names.

    *_serial times are measured with one worker, *_parallel times with the
    requested number of workers, speedups are serial / parallel.
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    preconditioner: str = Field(alias='pre')
    blocks: int

    # Median GMRES solve time
    solve_seconds_serial: float = Field(alias='solve_cpu_s')
    solve_seconds_parallel: float = Field(alias='solve_par_s')
    solve_speedup: float = Field(alias='solve_speedup', gt=0)

    # Median time of one preconditioner application
    precond_seconds_serial: float = Field(alias='pre_cpu_s')
    precond_seconds_parallel: float = Field(alias='pre_par_s')
    precond_speedup: float = Field(alias='pre_speedup', gt=0)

    iterations: int = Field(alias='iters')
    converged: bool


class ExperimentRun(BaseModel):
    precond: str
    blocks: int = Field(ge=1)
    overlap: int = Field(default=0, ge=0)


class ExperimentSpec(BaseModel):
    """A series of benchmark runs over one matrix, the rows of one result
    table"""

    name: str

    # A matrix source, see MatrixSource.parse
    matrix: str

    runs: List[ExperimentRun]


def load_experiment(name_or_path: str) -> ExperimentSpec:
    """Load an experiment from a JSON file, or a preset packaged with the
    library by its name (poisson_table, atmosmodd_table)."""
    path = Path(name_or_path)
    if not path.is_file():
        path = _PARENT_DIR / 'resources' / f'{name_or_path}.json'
        if not path.is_file():
            raise ValueError(f'No experiment file or preset {name_or_path!r}')
    with open(path, encoding='utf-8') as f:
        return ExperimentSpec.model_validate_json(f.read())
