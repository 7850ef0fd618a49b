"""Backend selection: compiled core if available, numpy fallback otherwise.

RELKERNEL_FORCE_FALLBACK=1 forces the fallback even when the compiled
extension is importable (used by the backend-equivalence tests and the
benchmark).
"""

from __future__ import annotations

import os

if os.environ.get("RELKERNEL_FORCE_FALLBACK", "") not in ("", "0"):
    from relkernel import _fallback as _impl
else:
    try:
        from relkernel import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        from relkernel import _fallback as _impl  # type: ignore[no-redef]

stable_batch = _impl.stable_batch
tempered_batch = _impl.tempered_batch
simulate_exit = _impl.simulate_exit
simulate_occupation = _impl.simulate_occupation


def backend_name() -> str:
    """Which implementation is running: 'compiled' or 'fallback'."""
    return _impl.BACKEND_NAME


def get_backend(name: str | None = None):
    """Return a backend module by name, for side-by-side comparisons."""
    if name in (None, backend_name()):
        return _impl
    if name == "fallback":
        from relkernel import _fallback
        return _fallback
    if name == "compiled":
        from relkernel import _core
        return _core
    raise ValueError(f"unknown backend {name!r}")
