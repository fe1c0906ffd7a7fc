"""Dressed-state phase ledgers for driven, damped level systems."""

try:
    from ._psnads import (
        __version__,
        build_psnads,
        integrate,
        mixing_angle,
        quasi_energies,
        run_scenario,
        visibility,
    )
except ImportError:  # extension on sys.path directly (in-tree builds)
    from _psnads import (
        __version__,
        build_psnads,
        integrate,
        mixing_angle,
        quasi_energies,
        run_scenario,
        visibility,
    )

__all__ = [
    "__version__",
    "build_psnads",
    "integrate",
    "mixing_angle",
    "quasi_energies",
    "run_scenario",
    "visibility",
]
