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

from typing import Optional


class HecTrisolveException(Exception):
    """An exception raised by the hec-trisolve library"""


class MatrixFormatError(HecTrisolveException, ValueError):
    """A sparse matrix or vector does not have the expected structure: index
    out of range, dimension mismatch, missing triangular shape..."""


class DuplicateEntryError(MatrixFormatError):
    """The same (row, col) position was given more than once"""


class MatrixMarketError(MatrixFormatError):
    """A MatrixMarket file could not be parsed into a sparse matrix"""


class SingularTriangularError(HecTrisolveException):
    """A triangular matrix has a zero or missing diagonal entry, the
    triangular system is singular."""

    def __init__(self, row: int, message: Optional[str] = None) -> None:
        super().__init__(
            message or f'Zero or missing diagonal entry in row {row}'
        )
        self.row = row


class ZeroPivotError(HecTrisolveException):
    """An incomplete factorization met a zero pivot.

    No pivoting is ever attempted, so this is a hard error. When the
    factorization was run on one block of a block preconditioner, `block` is
    the block id and `row` is the row index local to that block."""

    def __init__(self, row: int, block: Optional[int] = None) -> None:
        location = f'row {row}'
        if block is not None:
            location = f'block {block}, local row {row}'
        super().__init__(f'Zero pivot met during factorization ({location})')
        self.row = row
        self.block = block


class LevelScheduleError(HecTrisolveException):
    """A level vector or a level schedule is inconsistent with the matrix it
    is used with."""


class DeterminismError(HecTrisolveException):
    """Two runs of the same benchmark with different numbers of workers did
    not produce the same result."""
