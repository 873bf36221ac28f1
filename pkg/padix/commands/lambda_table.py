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
    short_help="Tabulates values of the local L-function.",
    help="""
    Tabulates the values :code:`Lambda_{D,z}(eta kappa)` for every character eta and weight character kappa
    of the job configuration.

    Each row holds one coordinate of the value over the basis of D_cris, rendered as an element of
    :code:`Q_p(zeta_{p^n})` with its certified modulus.
    Characters outside the certified domain produce marker rows instead of values.
    The certificate parameters of every character are part of the JSON output.
    """,
)
@config_option
@jinja_variables_file_option
@prime_option
@precision_option
@format_option
@workers_option
@out_option
def lambda_table(
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
        padix_echo(f"Tabulating the local L-function at p={job.p}, M={job.M}")
        table = JobRunner(job, workers).lambda_table()

    OutputProvider(table, output_format, out_file).provide()
    padix_echo(f"Computed {len(table.rows)} row(s) :sparkles:")
