# Copyright 2026 The roommatch Authors
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
"""Roommate and room matching under Leontief and additive utilities.

Instances are plain dicts ``{"n": n, "v": [[...]], "v_hat": [[...]]}``
whose entries may be ints, ``Fraction``s or strings such as ``"1/2"``.
Welfare values come back as ``Fraction``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Sequence

try:
    from . import _roommatch as _core
except ImportError:  # in-tree build: the module sits next to the package
    import _roommatch as _core  # type: ignore[no-redef]

CapExceededError = _core.CapExceededError

__all__ = [
    "CapExceededError",
    "audit",
    "from_3sat",
    "gen_figure",
    "gen_random",
    "max_welfare",
    "mechanism_ids",
    "reproduce_impossibility",
    "run_cli",
    "solve",
    "solve_max_weight",
]


def _encode(instance: dict[str, Any]) -> str:
    def value(x: Any) -> Any:
        if isinstance(x, Fraction):
            return str(x)
        return x

    out = dict(instance)
    out["v"] = [[value(x) for x in row] for row in instance["v"]]
    out["v_hat"] = [[value(x) for x in row] for row in instance["v_hat"]]
    return json.dumps(out)


def _fraction(text: str) -> Fraction:
    return Fraction(text)


def mechanism_ids() -> list[str]:
    return list(_core.mechanism_ids())


def solve(instance: dict[str, Any], mechanism: str, model: str = "leontief",
          sigma: Sequence[int] = (), oracle_cap: int = 6) -> dict[str, Any]:
    r = json.loads(_core.solve(_encode(instance), mechanism, model, list(sigma), oracle_cap))
    r["welfare"] = _fraction(r["welfare"])
    r["per_agent_utility"] = [_fraction(u) for u in r["per_agent_utility"]]
    return r


def max_welfare(instance: dict[str, Any], model: str = "leontief",
                cap: int = 6) -> dict[str, Any]:
    r = json.loads(_core.max_welfare(_encode(instance), model, cap))
    r["max_welfare"] = _fraction(r["max_welfare"])
    return r


def solve_max_weight(instance: dict[str, Any], model: str = "leontief") -> dict[str, Any]:
    r = json.loads(_core.solve_max_weight(_encode(instance), model))
    r["weight"] = _fraction(r["weight"])
    return r


def audit(instance: dict[str, Any], mechanism: str, model: str = "leontief",
          domain: str = "binary-all", sigma: Sequence[int] = (),
          cap: int = 3) -> dict[str, Any]:
    return json.loads(_core.audit(_encode(instance), mechanism, model, domain,
                                  list(sigma), cap))


def gen_figure(name: str, model: str = "leontief") -> dict[str, Any]:
    return json.loads(_core.gen_figure(name, model))


def gen_random(n: int, density: float = 0.5, symmetric: bool = False,
               seed: int = 0) -> dict[str, Any]:
    return json.loads(_core.gen_random(n, density, symmetric, seed))


def from_3sat(cnf: str) -> dict[str, Any]:
    return json.loads(_core.from_3sat(cnf))


def reproduce_impossibility(family: str, model: str = "leontief",
                            alpha: str | Fraction = "1") -> dict[str, Any]:
    return json.loads(_core.reproduce_impossibility(family, model, str(alpha)))


def run_cli(args: Sequence[str]) -> tuple[int, str, str]:
    return tuple(_core.run_cli(list(args)))  # type: ignore[return-value]
