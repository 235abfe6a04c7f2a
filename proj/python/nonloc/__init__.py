from ._nonloc import *  # noqa: F401,F403
from ._nonloc import __doc__  # noqa: F401
