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

"""Sparse matrix storage: CSR, ELL and the hybrid HEC format.

All matrices are immutable once built and can be shared between threads.
"""

# flake8: noqa: F401

from .csr import (
    CsrMatrix,
    check_vector,
    csr_from_coo,
    csr_from_triples,
    spmv_csr,
)
from .hec import (
    EllMatrix,
    HecMatrix,
    WidthPolicy,
    hec_from_csr,
    hec_to_csr,
    spmv_hec,
)
