# Copyright 2026 The behavioral-ibc Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Data-driven internal model control from offline input/output data."""

from ._ibc import (
    CertificationError,
    ConfigError,
    DiscreteStateSpace,
    ExperimentConfig,
    ForwardPredictor,
    InversePredictor,
    NumericalError,
    RankReport,
    Trajectory,
    TransferFunction,
    check_rank,
    cli,
    collect_offline,
    compare_controllers,
    discretize,
    hankel,
    interconnect,
    load_config,
    parse_config,
    regenerate,
    run_closed_loop,
    simulate,
)

__all__ = [
    "CertificationError",
    "ConfigError",
    "DiscreteStateSpace",
    "ExperimentConfig",
    "ForwardPredictor",
    "InversePredictor",
    "NumericalError",
    "RankReport",
    "Trajectory",
    "TransferFunction",
    "check_rank",
    "cli",
    "collect_offline",
    "compare_controllers",
    "discretize",
    "hankel",
    "interconnect",
    "load_config",
    "parse_config",
    "regenerate",
    "run_closed_loop",
    "simulate",
]
