"""Search kernels with a compiled fast path.

At import time the compiled extension is preferred; the pure-Python
implementation is the fallback. Set FSMCHECK_NO_EXT=1 to force the
fallback (useful for benchmarking and debugging).
"""

import os

from . import pure
from .encode import EncodedComponent, bits, encode_pair, label_table

if os.environ.get("FSMCHECK_NO_EXT"):
    impl = pure
else:
    try:
        from . import _speed as impl  # type: ignore[attr-defined]
    except ImportError:
        impl = pure

BACKEND = "compiled" if impl is not pure else "pure"

product_closure = impl.product_closure
cioco_bfs = impl.cioco_bfs
inclusion_bfs = impl.inclusion_bfs

LEFT_ONLY = pure.LEFT_ONLY
RIGHT_ONLY = pure.RIGHT_ONLY
LEFT_FEEDS_RIGHT = pure.LEFT_FEEDS_RIGHT
RIGHT_FEEDS_LEFT = pure.RIGHT_FEEDS_LEFT
NO_LABEL = pure.NO_LABEL

__all__ = [
    "BACKEND",
    "EncodedComponent",
    "bits",
    "encode_pair",
    "label_table",
    "product_closure",
    "cioco_bfs",
    "inclusion_bfs",
    "LEFT_ONLY",
    "RIGHT_ONLY",
    "LEFT_FEEDS_RIGHT",
    "RIGHT_FEEDS_LEFT",
    "NO_LABEL",
]
