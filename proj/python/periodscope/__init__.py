from ._periodscope import *  # noqa: F401,F403
