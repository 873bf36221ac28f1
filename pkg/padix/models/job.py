from __future__ import annotations

from enum import Enum
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, root_validator, validator

from padix.constants import DEFAULT_M_DELTA, DEFAULT_PRECISION, MINIMAL_PRECISION
from padix.utils.common import is_prime


class SeriesKind(str, Enum):
    coleman = "coleman"
    dirac = "dirac"
    units_dirac = "units_dirac"
    coeffs = "coeffs"


class SeriesSpec(BaseModel):
    """Source of one component :code:`lambda_i`: a Coleman series, a Dirac mass or explicit T-coefficients."""

    kind: SeriesKind
    c: Optional[int]
    b: Optional[int]
    coeffs: Optional[List[str]]
    file: Optional[Path]
    prec: Optional[int]

    @root_validator(skip_on_failure=True)
    def _check_kind(cls, values):  # noqa
        kind = values["kind"]
        if kind == SeriesKind.coleman and values.get("c") is None:
            raise ValueError("coleman series require the field c")
        if kind in (SeriesKind.dirac, SeriesKind.units_dirac) and values.get("b") is None:
            raise ValueError(f"{kind.value} series require the field b")
        if kind == SeriesKind.coeffs and not values.get("coeffs") and not values.get("file"):
            raise ValueError("coeffs series require either coeffs or file")
        return values

    @validator("file")
    def _file_exists(cls, value: Optional[Path]):  # noqa
        if value is not None and not value.exists():
            raise ValueError(f"referenced file {value} does not exist")
        return value


class CrisDataSpec(BaseModel):
    alphas: List[str] = ["1"]
    labels: Optional[List[str]]
    hodge_tate: Optional[List[int]]

    @validator("alphas")
    def _non_empty(cls, value: List[str]):  # noqa
        if not value:
            raise ValueError("at least one eigenvalue is required")
        return value


class CharacterSpec(BaseModel):
    conductor_exp: int
    tame_index: int = 0
    wild_exponent: int = 0

    @validator("conductor_exp")
    def _non_negative(cls, value: int):  # noqa
        if value < 0:
            raise ValueError("conductor_exp shall be nonnegative")
        return value


class KappaSpec(BaseModel):
    """Either :code:`{j: ...}` for :code:`x -> x^j` or :code:`{tame_index: ..., z_kappa: ...}`."""

    j: Optional[int]
    tame_index: Optional[int]
    z_kappa: Optional[str]

    @root_validator(skip_on_failure=True)
    def _check_form(cls, values):  # noqa
        if values.get("j") is None and values.get("z_kappa") is None:
            raise ValueError("a weight character needs either j or z_kappa")
        if values.get("j") is not None and values.get("z_kappa") is not None:
            raise ValueError("j and z_kappa are mutually exclusive")
        return values


class MellinSpec(BaseModel):
    c: int = 2
    j: List[int] = [1]


class TameEpsilon(BaseModel):
    ell: int
    eps: str


class EpsilonSpec(BaseModel):
    omega: str = "1"
    k: int = 2
    j: List[int] = [0]
    eps_p: str = "1"
    eps_tame: List[TameEpsilon] = []


class JobConfig(BaseModel):
    p: int
    M: int = DEFAULT_PRECISION
    D_T: Optional[int]
    m_delta: int = DEFAULT_M_DELTA
    crisdata: CrisDataSpec = CrisDataSpec()
    z: List[SeriesSpec] = [SeriesSpec(kind=SeriesKind.coleman, c=2)]
    characters: List[CharacterSpec] = []
    kappas: List[KappaSpec] = [KappaSpec(j=0)]
    mellin: Optional[MellinSpec]
    epsilon: Optional[EpsilonSpec]

    @validator("p")
    def _odd_prime(cls, value: int):  # noqa
        if value == 2 or not is_prime(value):
            raise ValueError(f"p shall be an odd prime, got {value}")
        return value

    @validator("M")
    def _minimal_precision(cls, value: int):  # noqa
        if value < MINIMAL_PRECISION:
            raise ValueError(f"M shall be at least {MINIMAL_PRECISION}, got {value}")
        return value

    @validator("D_T")
    def _positive_degree(cls, value: Optional[int]):  # noqa
        if value is not None and value < 1:
            raise ValueError("D_T shall be positive")
        return value

    @validator("m_delta")
    def _non_negative_m_delta(cls, value: int):  # noqa
        if value < 0:
            raise ValueError("m_delta shall be nonnegative")
        return value

    @root_validator(skip_on_failure=True)
    def _series_per_alpha(cls, values):  # noqa
        if len(values["z"]) != len(values["crisdata"].alphas):
            raise ValueError(
                f"expected one series per eigenvalue, got {len(values['z'])} for {len(values['crisdata'].alphas)}"
            )
        return values

    def with_overrides(self, p: Optional[int] = None, M: Optional[int] = None) -> JobConfig:
        content = self.dict()
        if p is not None:
            content["p"] = p
        if M is not None:
            content["M"] = M
        return JobConfig(**content)
