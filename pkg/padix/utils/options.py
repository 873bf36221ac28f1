from pathlib import Path

import click

from padix.callbacks import verify_jinja_variables_file, verify_prime, verify_precision
from padix.constants import OUTPUT_FORMATS


def prime_option(f):
    return click.option(
        "-p",
        "--prime",
        "prime",
        required=False,
        type=int,
        default=None,
        callback=verify_prime,
        help="""Odd prime p. \n
            Overrides the :code:`p` field of the job configuration.""",
    )(f)


def precision_option(f):
    return click.option(
        "-M",
        "--precision",
        "precision",
        required=False,
        type=int,
        default=None,
        callback=verify_precision,
        help="""Target absolute precision exponent M (values are certified modulo p^M). \n
            Overrides the :code:`M` field of the job configuration.""",
    )(f)


def config_option(f):
    return click.option(
        "--config",
        "config_file",
        required=False,
        type=click.Path(path_type=Path),
        default=None,
        help="""Path to the job configuration file (json, yaml or their Jinja2 templates). \n
            If not provided, :code:`conf/padix.*` is auto-discovered.""",
    )(f)


def jinja_variables_file_option(f):
    return click.option(
        "--jinja-vars-file",
        required=False,
        default=None,
        type=click.Path(path_type=Path),
        callback=verify_jinja_variables_file,
        help="""Path to a file with variables for the Jinja2 template. \n
            Only works when the configuration file is a Jinja2 template.""",
    )(f)


def format_option(f):
    return click.option(
        "--format",
        "output_format",
        required=False,
        type=click.Choice(OUTPUT_FORMATS),
        default="json",
        show_default=True,
        help="Output format of the result table.",
    )(f)


def out_option(f):
    return click.option(
        "--out",
        "out_file",
        required=False,
        type=click.Path(path_type=Path),
        default=None,
        help="Write the output to this file instead of stdout.",
    )(f)


def workers_option(f):
    return click.option(
        "--workers",
        required=False,
        type=click.IntRange(min=1),
        default=1,
        show_default=True,
        help="""Number of worker processes. \n
            The output does not depend on this setting.""",
    )(f)
