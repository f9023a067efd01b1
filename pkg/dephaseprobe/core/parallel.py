"""
Ordered evaluation of independent grid points on a thread pool.
"""

from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

from tqdm import tqdm

from dephaseprobe.settings import Settings

Item = TypeVar("Item")
Result = TypeVar("Result")


def parallel_map(
    func: Callable[[Item], Result],
    items: Iterable[Item],
    max_workers: int | None = None,
    progress: bool = False,
    desc: str | None = None,
) -> list[Result]:
    """
    Apply ``func`` to every item, returning results in input order.

    Parameters
    ----------
    func : Callable[[Item], Result]
        Function of one grid point. Exceptions propagate to the caller.
    items : Iterable[Item]
        Grid points.
    max_workers : int | None
        Worker cap. Defaults to ``Settings().max_workers``, which honours
        ``DEPHASEPROBE_THREADS``.
    progress : bool
        Show a tqdm bar on stderr.
    desc : str | None
        Label for the progress bar.

    Returns
    -------
    results : list[Result]
    """
    items = list(items)
    if max_workers is None:
        max_workers = Settings().max_workers

    if max_workers <= 1 or len(items) <= 1:
        iterator = map(func, items)
        return list(tqdm(iterator, total=len(items), desc=desc, disable=not progress))

    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        iterator = executor.map(func, items)
        return list(tqdm(iterator, total=len(items), desc=desc, disable=not progress))
