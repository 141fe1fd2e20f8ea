"""Backend selection: compiled extension if built, numpy reference otherwise.

Set SERIES_SUMMA_FORCE_FALLBACK=1 to skip the compiled module (used by the
benchmark and the equivalence tests).
"""

from __future__ import annotations

import os

if os.environ.get("SERIES_SUMMA_FORCE_FALLBACK", "") not in ("", "0"):
    from . import _series_ref as _impl

    HAVE_NATIVE = False
else:
    try:
        from . import _series_core as _impl  # type: ignore[attr-defined]

        HAVE_NATIVE = True
    except ImportError:
        from . import _series_ref as _impl

        HAVE_NATIVE = False

trig_sweep = _impl.trig_sweep
series_eval = _impl.series_eval
legendre_sweep = _impl.legendre_sweep

__all__ = ["trig_sweep", "series_eval", "legendre_sweep", "HAVE_NATIVE"]
