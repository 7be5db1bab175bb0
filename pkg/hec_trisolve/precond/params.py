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

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field


class PreconditionerKind(Enum):
    BILU0 = 'bilu0'
    BILUK = 'biluk'
    BILUT = 'bilut'
    RAS = 'ras'

    @property
    def allows_overlap(self) -> bool:
        return self is PreconditionerKind.RAS


class IluMethod(Enum):
    ILU0 = 'ilu0'
    ILUK = 'iluk'
    ILUT = 'ilut'


class IluParams(BaseModel):
    """The incomplete factorization applied to every block"""

    model_config = ConfigDict(frozen=True)

    # Used by RAS only. Block ILU kinds imply their method.
    method: IluMethod = IluMethod.ILU0

    # k of ILU(k)
    fill_level: int = Field(default=1, ge=0)

    # p of ILUT(p, tol): off-diagonal entries kept per row, in each of the
    # L and U parts
    max_fill: int = Field(default=7, ge=1)

    # tol of ILUT(p, tol), relative to the 2-norm of the row of A
    drop_tol: float = Field(default=0.1, ge=0)

    def describe(self, method: IluMethod) -> str:
        if method is IluMethod.ILUK:
            return f'ILU({self.fill_level})'
        if method is IluMethod.ILUT:
            return f'ILUT({self.max_fill}, {self.drop_tol:g})'
        return 'ILU(0)'


def block_method(kind: PreconditionerKind, params: IluParams) -> IluMethod:
    """The factorization used for the blocks of a preconditioner kind"""
    if kind is PreconditionerKind.BILU0:
        return IluMethod.ILU0
    if kind is PreconditionerKind.BILUK:
        return IluMethod.ILUK
    if kind is PreconditionerKind.BILUT:
        return IluMethod.ILUT
    return params.method
