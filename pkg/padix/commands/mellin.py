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
    workers_option,
)


@click.command(
    context_settings=CONTEXT_SETTINGS,
    short_help="Tabulates moments of the Coleman series.",
    help="""
    Tabulates the moments :code:`int_{Z_p^x} x^j` of the measure attached to the Coleman series of c,
    for the values of c and j given in the :code:`mellin` section of the job configuration.

    Every j yields three rows computed independently:

    * :code:`x^j:oracle`: the Mahler pairing of the integrand with the series
    * :code:`x^j:series`: :code:`(partial^j f)(0)` on the restriction of the series to Z_p^x
    * :code:`x^j:kl`: the Bernoulli number formula
    """,
)
@config_option
@jinja_variables_file_option
@prime_option
@precision_option
@format_option
@workers_option
@out_option
def mellin(
    config_file: Optional[Path],
    jinja_vars_file: Optional[Path],
    prime: Optional[int],
    precision: Optional[int],
    output_format: str,
    workers: int,
    out_file: Optional[Path],
):
    with usage_errors():
        job = ConfigReader(config_file, jinja_vars_file).get_job(prime, precision)
        table = JobRunner(job, workers).mellin_table()

    OutputProvider(table, output_format, out_file).provide()
    padix_echo(f"Computed {len(table.rows)} moment(s)")
