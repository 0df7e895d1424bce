"""graphlb: data-parallel graph engine with five task-distribution strategies.

The package emulates the GPU kernel-launch model on the CPU: virtual thread
grids over shared worklists, atomic distance relaxation, and per-invocation
work counters. On top of it sit five ways of handing graph work to threads
(node-based, edge-based, workload decomposition, node splitting, and
hierarchical processing) for BFS and SSSP, plus sequential oracles and a
benchmark harness that reports load-imbalance counters.
"""

from .csr import (
    COO_ID_BYTES,
    DEFAULT_COO_BUDGET_BYTES,
    DEFAULT_COO_BUDGET_CELLS,
    CooCapacityError,
    CooGraph,
    CsrGraph,
    csr_to_coo,
)
from .degrees import DegreeHistogram, DegreeStats, build_histogram, compute_mdt, degree_stats
from .engine import (
    INF,
    DistArray,
    KernelConfig,
    KernelLaunchError,
    MetricsRecord,
    ThreadCtx,
    atomic_relax_min,
    launch_kernel,
    resolve_threads,
)
from .generators import (
    generate_er,
    generate_rmat,
    graph_from_degrees,
    path_graph,
    ring_graph,
    star_graph,
)
from .io import ParseError, load_dimacs_gr, load_edge_list, read_csr_bin, write_csr_bin
from .oracles import VerificationReport, dijkstra, sequential_bfs, verify
from .scan import inclusive_scan
from .strategies import (
    INFEASIBLE_MEMORY,
    RelaxOp,
    SplitGraph,
    StrategyRun,
    find_offsets,
    run_bs,
    run_ep,
    run_hp,
    run_ns,
    run_strategy,
    run_wd,
    split_graph,
)
from .worklist import Worklist, WorklistOverflow, wl_condense, wl_push_chunk, wl_push_node

__version__ = "0.1.0"
