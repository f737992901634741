"""Spectral solver for the Cauchy operator on (-1,1) with exterior Dirichlet conditions."""

try:
    # Installed layout: the extension lives inside this package.
    from cauchywell._cauchywell import *  # noqa: F401,F403
    from cauchywell._cauchywell import __version__  # noqa: F401
except ImportError:
    # In-tree build layout: the extension sits on PYTHONPATH next to the build.
    from _cauchywell import *  # noqa: F401,F403
    from _cauchywell import __version__  # noqa: F401
