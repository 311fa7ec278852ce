# Copyright 2026 The cvcluster Authors
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
"""Continuous-variable cluster-state teleportation: cluster construction,
output correlators, log-negativity and witness evaluation."""

from ._core import (
    ClusterSpec,
    Correlators,
    Pipeline,
    ScenarioError,
    SymplecticPair,
    SynthesisError,
    TopologyError,
    WeightError,
    WitnessValue,
    XFormError,
    closed_form_correlators,
    common_neighbor_matrix,
    db_of_r,
    en_closed,
    en_of,
    gmatrix,
    ideal_log_negativity,
    linear_chain,
    log_negativity,
    nrail,
    optimal_gain,
    optimal_weights,
    rbar,
    rbar_table,
    scenarios,
    symplectic_pt,
    symplectic_pt_generic,
    symplectic_spectrum,
    topology,
    umatrix,
    verify,
    witness,
    zero_entanglement_boundary,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
