import datetime as dt
from typing import Any

import click
import emoji


def padix_echo(message: Any):
    formatted_time = dt.datetime.now().strftime("%Y-%m-%d %H:%M:%S.%f")[:-3]
    formatted_message = f"[padix][{formatted_time}] {message}"
    try:
        click.echo(emoji.emojize(formatted_message), err=True)
    # some terminals cannot encode emoji shortcodes
    except UnicodeEncodeError:
        click.echo(formatted_message, err=True)
