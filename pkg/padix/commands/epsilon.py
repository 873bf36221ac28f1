from pathlib import Path
from typing import Optional

import click

from padix.api.config_reader import ConfigReader
from padix.api.jobs import JobRunner
from padix.api.output_provider import OutputProvider
from padix.constants import CONTEXT_SETTINGS
from padix.utils import padix_echo
from padix.utils.common import usage_errors
from padix.utils.options import (
    config_option,
    format_option,
    jinja_variables_file_option,
    out_option,
    precision_option,
    prime_option,
)


@click.command(
    context_settings=CONTEXT_SETTINGS,
    short_help="Tabulates functional equation constants.",
    help="""
    Tabulates the constants :code:`C(f, eta, j)` of the functional equation relating the twists by
    :code:`eta x^j` and :code:`eta^-1 x^(k-2-j)`.

    The period :code:`omega`, the weight :code:`k` and the local factors :code:`eps_p`, :code:`eps_tame`
    come from the :code:`epsilon` section of the job configuration.
    Without characters in the configuration, the trivial character is used.
    """,
)
@config_option
@jinja_variables_file_option
@prime_option
@precision_option
@format_option
@out_option
def epsilon(
    config_file: Optional[Path],
    jinja_vars_file: Optional[Path],
    prime: Optional[int],
    precision: Optional[int],
    output_format: str,
    out_file: Optional[Path],
):
    with usage_errors():
        job = ConfigReader(config_file, jinja_vars_file).get_job(prime, precision)
        table = JobRunner(job).epsilon_table()

    OutputProvider(table, output_format, out_file).provide()
    padix_echo(f"Computed {len(table.rows)} constant(s)")
