"""Sparse principal components via alternating thresholded updates."""

try:
    from ._spca import *  # noqa: F401,F403  (installed wheel layout)
    from ._spca import __version__  # noqa: F401
except ImportError:  # development layout: extension on sys.path
    from _spca import *  # noqa: F401,F403
    from _spca import __version__  # noqa: F401
