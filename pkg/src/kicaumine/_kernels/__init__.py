"""Hot-loop kernels with a compiled fast path and a pure-Python fallback.

The compiled extension (``_native``, built from Cython) is selected at
import time when present; otherwise the pure-Python twin (``_pure``) is
used. Both implement identical semantics and produce bit-identical
output. Set ``KICAUMINE_PURE=1`` to force the fallback, e.g. for
benchmark baselines or to rule the extension out while debugging.
"""

import os

from . import _pure

BACKEND = "pure"
_impl = _pure

if os.environ.get("KICAUMINE_PURE", "0").strip() in ("", "0"):
    try:
        from . import _native as _impl  # type: ignore[no-redef]

        BACKEND = "native"
    except ImportError:
        pass

score_document = _impl.score_document
strip_non_letters = _impl.strip_non_letters

__all__ = ["BACKEND", "score_document", "strip_non_letters"]
