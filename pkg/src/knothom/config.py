"""Resource caps shared by the compute modules."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

ENV_PREFIX = "KNOTHOM_"


@dataclass(frozen=True)
class Caps:
    """Guards that keep a default run short.

    ``state_cap`` bounds coloring-steps (c**k times the number of letters),
    ``order_cap`` bounds family group orders, ``exponent_cap`` bounds the
    torus-profile range, ``max_crossings`` bounds |X| in alternating sums and
    ``cross_check_cap`` is the largest p whose profile entry is re-derived
    through the braid representation.
    """

    state_cap: int = 10**7
    order_cap: int = 5040
    exponent_cap: int = 1000
    max_crossings: int = 20
    cross_check_cap: int = 10

    @classmethod
    def from_env(cls, environ=None, **overrides) -> "Caps":
        """Defaults, then ``KNOTHOM_<FIELD>`` variables, then explicit overrides."""
        environ = os.environ if environ is None else environ
        values = {}
        for f in fields(cls):
            raw = environ.get(ENV_PREFIX + f.name.upper())
            if raw is not None:
                try:
                    values[f.name] = int(raw)
                except ValueError:
                    from .errors import ConfigError

                    raise ConfigError(f"{ENV_PREFIX}{f.name.upper()} must be an integer, got {raw!r}")
        values.update({k: v for k, v in overrides.items() if v is not None})
        return replace(cls(), **values)


DEFAULT_CAPS = Caps()
