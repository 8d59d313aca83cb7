# Copyright 2026 The Themis Authors
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


"""Python bindings for the THEMIS protocol simulator."""

import json as _json

from . import _themis
from ._themis import (
    ThemisError,
    add,
    decrypt,
    encrypt,
    keygen,
    prove_decryption,
    scale,
    sign,
    verify_decryption,
    verify_signature,
    vrf_prove,
    vrf_verify,
)

__all__ = [
    "ThemisError",
    "add",
    "bench_client",
    "bench_settlement",
    "decrypt",
    "encrypt",
    "keygen",
    "prove_decryption",
    "random_scenario",
    "run_scenario",
    "scale",
    "sign",
    "verify_decryption",
    "verify_signature",
    "vrf_prove",
    "vrf_verify",
]


def run_scenario(scenario, seed=None):
    """Runs a scenario (dict or JSON text) and returns the report as a dict."""
    text = scenario if isinstance(scenario, str) else _json.dumps(scenario)
    return _json.loads(_themis.run_scenario(text, seed))


def random_scenario(seed, inject=None):
    """Random honest scenario, optionally with "underpay" or "overwithdraw"."""
    return _json.loads(_themis.random_scenario(seed, inject or ""))


def bench_client(sizes=(64, 128, 256), runs=10, seed=1):
    return _json.loads(_themis.bench_client(list(sizes), runs, seed))


def bench_settlement(batches=(1, 80, 200, 400, 800), runs=5, seed=1):
    return _json.loads(_themis.bench_settlement(list(batches), runs, seed))
