from .engine import (
    CLIENT,
    CONGEST,
    CONGEST_MODE,
    LOCAL,
    LOCAL_MODE,
    PLAIN,
    SC,
    SERVER,
    VC,
    BandwidthExceeded,
    Metrics,
    Mode,
    Network,
    NetworkError,
    NodeProgram,
    RunTrace,
    Topology,
    build_topology,
    graph_topology,
    multiplex,
    node_rng,
    payload_bits,
    run,
    sub_seed,
)
from .primitives import Forest, WEdge, build_forest, edge_gather, neighbor_send, tree_aggregate
from .programs import (
    Tree,
    bfs_tree,
    broadcast,
    connected_components,
    converge,
    converge_max,
    converge_sum,
    elect_leader,
    unreached,
)

__all__ = [
    "Forest",
    "WEdge",
    "build_forest",
    "edge_gather",
    "neighbor_send",
    "tree_aggregate",
    "BandwidthExceeded",
    "CLIENT",
    "CONGEST",
    "CONGEST_MODE",
    "LOCAL",
    "LOCAL_MODE",
    "Metrics",
    "Mode",
    "Network",
    "NetworkError",
    "NodeProgram",
    "PLAIN",
    "RunTrace",
    "SC",
    "SERVER",
    "Topology",
    "Tree",
    "VC",
    "bfs_tree",
    "broadcast",
    "build_topology",
    "connected_components",
    "converge",
    "converge_max",
    "converge_sum",
    "elect_leader",
    "graph_topology",
    "multiplex",
    "node_rng",
    "payload_bits",
    "run",
    "sub_seed",
    "unreached",
]
