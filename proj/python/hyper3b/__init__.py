from ._hyper3b import *  # noqa: F401,F403
