"""Normal-approximation bounds for exchangeable random tensors.

Thin python surface over the C++ core: seminorms, the Hoeffding projection
operators, the exact Z-to-W decomposition, distribution-model estimators, and
the bound evaluators, plus exact small-instance enumeration used to verify
all of them.
"""

from tensorclt._core import *  # noqa: F401,F403
from tensorclt._core import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
__doc__ = (__doc__ or "") + "\n\n" + (_core_doc or "")
