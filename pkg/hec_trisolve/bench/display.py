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

"""Progress lines for long benchmark runs.

Inside IPython the current line is an ipywidgets Label updated in place. In
a terminal it is rewritten with a carriage return.
"""

import time

from IPython import get_ipython
from IPython.display import display

# There is no stubs for the ipywidget library
from ipywidgets import Label  # type: ignore

_label = Label()
_started = time.perf_counter()


def in_ipython() -> bool:
    try:
        return get_ipython() is not None
    except ModuleNotFoundError:
        return False


def _format(text: str) -> str:
    return f'[{time.perf_counter() - _started:8.2f}s] {text}'


def start_step(text: str) -> None:
    """Open a new progress line"""
    # pylint: disable=global-statement
    global _label, _started
    _started = time.perf_counter()
    if in_ipython():
        _label = Label()
        display(_label)
    show_progress(text)


def show_progress(text: str) -> None:
    """Replace the text of the current progress line"""
    if in_ipython():
        _label.value = _format(text)
    else:
        # Padding erases the end of a longer previous text
        print(f'{_format(text):<79}', end='\r', flush=True)


def end_step(text: str) -> None:
    """Write the final text of the current progress line and close it"""
    show_progress(text)
    if not in_ipython():
        print()
