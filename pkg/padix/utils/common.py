from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from typing import Callable, Iterable, Iterator, List, TypeVar

import click
import jinja2
import yaml

from padix.errors import PadixError

T = TypeVar("T")
R = TypeVar("R")


def run_in_order(func: Callable[[T], R], items: Iterable[T], workers: int = 1) -> List[R]:
    """Maps :code:`func` over :code:`items`, optionally in worker processes.

    Results are always returned in the order of the inputs.

    Args:
        func (Callable): module-level (picklable) function
        items (Iterable): inputs
        workers (int): number of worker processes, 1 means in-process evaluation

    Returns:
        List: results in input order
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items))


@contextmanager
def usage_errors() -> Iterator[None]:
    """Reports configuration and domain errors as click usage errors (exit code 2)."""
    try:
        yield
    except (PadixError, ValueError, yaml.YAMLError, jinja2.TemplateError) as e:
        raise click.UsageError(str(e)) from e


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True
