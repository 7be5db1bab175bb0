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

"""Block ILU and restricted additive Schwarz preconditioners."""

# flake8: noqa: F401

from .block import BlockPreconditioner, block_diagonal, build_preconditioner
from .description import IdentityPreconditioner, Preconditioner
from .params import IluMethod, IluParams, PreconditionerKind
from .partition import Partition, adjacency, extend_overlap, partition_graph
