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
    short_help="Dumps convergence certificates.",
    help="""
    Dumps the convergence certificate of every pair (eta, kappa) of the job configuration.

    A certificate fixes the level N of the double series defining :code:`kappa(partial)`, the number J of
    terms summed and the per-term slope of the valuation bound; it is admissible when the slope is positive.
    """,
)
@config_option
@jinja_variables_file_option
@prime_option
@precision_option
@format_option
@out_option
def certify(
    config_file: Optional[Path],
    jinja_vars_file: Optional[Path],
    prime: Optional[int],
    precision: Optional[int],
    output_format: str,
    out_file: Optional[Path],
):
    with usage_errors():
        job = ConfigReader(config_file, jinja_vars_file).get_job(prime, precision)
        table = JobRunner(job).certify_table()

    OutputProvider(table, output_format, out_file).provide()
    padix_echo(f"Issued {len(table.certificates)} certificate(s)")
