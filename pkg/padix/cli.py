import click

from padix import __version__
from padix.commands.certify import certify
from padix.commands.epsilon import epsilon
from padix.commands.lambda_table import lambda_table
from padix.commands.mellin import mellin
from padix.commands.verify import verify
from padix.constants import CONTEXT_SETTINGS


@click.group(context_settings=CONTEXT_SETTINGS)
@click.version_option(version=__version__, message="padix, p-adic local L-functions, version %(version)s")
def cli():
    pass


cli.add_command(verify, name="verify")
cli.add_command(lambda_table, name="lambda")
cli.add_command(certify, name="certify")
cli.add_command(mellin, name="mellin")
cli.add_command(epsilon, name="epsilon")

if __name__ == "__main__":
    cli()
