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

"""Incomplete LU factorizations: ILU(0), ILU(k) and ILUT(p, tol).

No pivoting is performed: a zero pivot raises ZeroPivotError.
"""

# flake8: noqa: F401

from .factors import IluFactors, ilu0
from .fill import fill_pattern, ilu_k
from .threshold import ilut
