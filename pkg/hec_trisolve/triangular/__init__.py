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

"""Level-parallel sparse triangular solves.

A triangular matrix is preprocessed once (levels, level-order reordering,
HEC conversion) into a PreparedTriangular, then solved any number of times
with a chosen number of worker threads.
"""

# flake8: noqa: F401

from .prepared import (
    PreparedTriangular,
    TriangularKind,
    prepare_lower,
    prepare_upper,
    reversal_map,
    reverse_matrix,
)
from .solve import serial_backward_solve, serial_forward_solve, solve
