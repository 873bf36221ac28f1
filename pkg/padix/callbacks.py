from pathlib import Path
from typing import Optional

import click

from padix.constants import MINIMAL_PRECISION
from padix.utils.common import is_prime


def verify_jinja_variables_file(_, __, value: Optional[Path]):
    if value:
        if value.suffix not in [".yaml", ".yml"]:
            raise click.BadParameter("Jinja variables file shall be provided in yaml or yml format")
        if not value.exists():
            raise click.BadParameter(f"Jinja variables file option is not empty, but file is non-existent {value}")
    return value


def verify_prime(_, __, value: Optional[int]):
    if value is not None and (value == 2 or not is_prime(value)):
        raise click.BadParameter(f"p shall be an odd prime, got {value}")
    return value


def verify_precision(_, __, value: Optional[int]):
    if value is not None and value < MINIMAL_PRECISION:
        raise click.BadParameter(f"M shall be at least {MINIMAL_PRECISION}, got {value}")
    return value
