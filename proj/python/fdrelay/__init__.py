# SPDX-License-Identifier: Apache-2.0
"""Robust full-duplex MIMO relay design: water-filling, worst-case RSI rates,
the nested robust design loop and Monte-Carlo sweeps."""

from ._fdrelay import *  # noqa: F401,F403
from ._fdrelay import __version__

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
