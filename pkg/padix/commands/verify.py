from pathlib import Path
from typing import Optional

import click

from padix.api.output_provider import ReportProvider
from padix.api.suites import run_suites
from padix.constants import CONTEXT_SETTINGS, DEFAULT_PRECISION, DEFAULT_PRIME, EXIT_IDENTITY_FAILURE, SUITE_CHOICES
from padix.utils import padix_echo
from padix.utils.common import usage_errors
from padix.utils.options import out_option, precision_option, prime_option, workers_option


@click.command(
    context_settings=CONTEXT_SETTINGS,
    short_help="Runs the identity suites.",
    help="""
    Runs the identity suites and prints one line per identity with its status.

    Available suites:

    * :code:`ops`: operator algebra of phi, psi, partial and sigma_a on random series, Coleman fixed point
    * :code:`gauss`: Gauss sums and GL_1 epsilon factors of every character of small conductor
    * :code:`mellin`: Mahler pairing and series moments of the Coleman series against Bernoulli numbers
    * :code:`lambda`: closed forms, certificate soundness and stability of the local L-function
    * :code:`epsilon`: constants of the functional equation
    * :code:`all`: every suite above

    The command exits with code 1 when an identity fails.
    """,
)
@click.option(
    "--suite",
    required=False,
    type=click.Choice(SUITE_CHOICES),
    default="all",
    show_default=True,
    help="Identity suite to run.",
)
@prime_option
@precision_option
@workers_option
@out_option
def verify(suite: str, prime: Optional[int], precision: Optional[int], workers: int, out_file: Optional[Path]):
    p = prime or DEFAULT_PRIME
    M = precision or DEFAULT_PRECISION
    padix_echo(f"Running the {suite} suite at p={p}, M={M} :hourglass:")

    with usage_errors():
        report = run_suites(suite, p, M, workers)

    ReportProvider(report, out_file).provide()

    if not report.passed:
        padix_echo("Some identities do not hold, please check the report above")
        click.get_current_context().exit(EXIT_IDENTITY_FAILURE)

    padix_echo("All identities hold :sparkles:")
