"""Sparse decomposition of transition probability matrices into
Boolean-network matrices."""

try:
    from ._sparsepbn import *  # noqa: F401,F403  (installed layout)
    from ._sparsepbn import __doc__  # noqa: F401
except ImportError:  # in-tree builds put the extension on sys.path directly
    from _sparsepbn import *  # noqa: F401,F403
    from _sparsepbn import __doc__  # noqa: F401
