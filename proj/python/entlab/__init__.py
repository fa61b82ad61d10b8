# Copyright 2026 The entlab developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Simulators and exact audits for entanglement-assisted communication protocols.

Everything lives in the compiled extension; this package re-exports it. Exact
rationals arrive as fractions.Fraction and matrices as numpy arrays.
"""

__version__ = "0.1.0"

try:
    from ._core import *  # noqa: F401,F403  (installed package layout)
    from . import _core as _impl
except ImportError:  # in-tree build: extension directory on PYTHONPATH
    from _core import *  # noqa: F401,F403
    import _core as _impl

__all__ = sorted(name for name in dir(_impl) if not name.startswith("_"))
del _impl
