# Copyright 2026 The espec Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Entanglement specification networks: paths, functional labels and protocols."""

from ._espec import (
    DimensionError,
    Error,
    FunctionalLabel,
    Linearity,
    NotCompilable,
    ZeroAmplitude,
    __version__,
    adjoint,
    canonical,
    compile,
    compose,
    composite,
    diagnostics,
    label,
    predict,
    prop_eq,
    run_cli,
    verify,
)

__all__ = [
    "DimensionError",
    "Error",
    "FunctionalLabel",
    "Linearity",
    "NotCompilable",
    "ZeroAmplitude",
    "__version__",
    "adjoint",
    "canonical",
    "compile",
    "compose",
    "composite",
    "diagnostics",
    "label",
    "predict",
    "prop_eq",
    "run_cli",
    "verify",
]
