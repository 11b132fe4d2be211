"""Collective-spin simulation and entanglement-depth certification.

Exact moments of N-qubit states (Dicke ladder, products, block mixtures),
per-qubit dephasing / bit-flip channels, finite-shot measurement emulation,
and the xi / chi depth criteria with their partition bounds.
"""

try:
    from ._spincert import *  # noqa: F401,F403
    from ._spincert import __version__  # noqa: F401
except ImportError:  # development tree: extension built next to the source
    from _spincert import *  # noqa: F401,F403
    from _spincert import __version__  # noqa: F401
