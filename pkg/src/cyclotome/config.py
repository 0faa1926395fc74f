"""Size limits and the exception hierarchy shared by every module."""

from __future__ import annotations

import os
from dataclasses import dataclass

DEFAULT_Q_LIMIT = 2**24
DEFAULT_K_LIMIT = 2000
DEFAULT_INT_MATRIX_LIMIT = 64
# exp/log tables are kept as Python lists for scalar arithmetic up to this order
SCALAR_TABLE_LIMIT = 2**20


class CyclotomeError(Exception):
    """Base class for errors raised by this package."""


class ParameterError(CyclotomeError, ValueError):
    """Invalid input parameters (non-prime characteristic, k not dividing q-1, ...)."""


class LimitError(ParameterError):
    """A configured size limit would be exceeded."""


class FactorizationError(CyclotomeError):
    """Integer factorization did not finish within the allowed effort."""


class CheckFailed(CyclotomeError):
    """An identity that must hold exactly did not (indicates a bug)."""


@dataclass(frozen=True)
class Limits:
    q_limit: int = DEFAULT_Q_LIMIT
    k_limit: int = DEFAULT_K_LIMIT
    int_matrix_limit: int = DEFAULT_INT_MATRIX_LIMIT

    @classmethod
    def from_env(cls) -> "Limits":
        return cls(
            q_limit=_env_int("CYCLOTOME_Q_LIMIT", DEFAULT_Q_LIMIT),
            k_limit=_env_int("CYCLOTOME_K_LIMIT", DEFAULT_K_LIMIT),
        )


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ParameterError(f"{name} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ParameterError(f"{name} must be positive")
    return value


def get_limits(limits: Limits | None = None) -> Limits:
    return limits if limits is not None else Limits.from_env()
