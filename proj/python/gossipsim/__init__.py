"""Deterministic gossip-protocol simulator and LOCAL-model simulation toolkit.

Thin Python surface over the C++ core: graph generators and conductance
quantities, the UniformGossip engine with reversible traces, the Superstep
and DirectExchange protocols, the conductance decomposition oracle, spanner
extraction, and the LOCAL-to-GOSSIP simulators.
"""

try:
    from ._gossipsim import *  # noqa: F401,F403  (installed package layout)
    from ._gossipsim import __doc__ as _core_doc  # noqa: F401
except ImportError:  # build-tree layout: extension sits next to the package
    from _gossipsim import *  # noqa: F401,F403
