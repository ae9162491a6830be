# Licensed under the MIT License.
"""Order-preserving parallel map.

Results always come back in input order, so any reduction over them is performed in a fixed
order and is bit-identical for every worker count.
"""
import concurrent.futures
from typing import Callable, Iterable, List, Optional, TypeVar

from noisybayes import env

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(fn: Callable[[T], R],
                items: Iterable[T],
                num_workers: Optional[int] = None) -> List[R]:
    items = list(items)
    if num_workers is None:
        num_workers = env.NUM_WORKERS
    if num_workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with concurrent.futures.ThreadPoolExecutor(max_workers=num_workers) as executor:
        return list(executor.map(fn, items))
