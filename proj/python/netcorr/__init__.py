"""Exploratory statistics for node-valued networks.

Thin Python layer over the C++ core: graphs, interaction weights, global and
node-level autocorrelation statistics, bivariate network correlation,
permutation and configuration nulls, synthetic generators, edge-list/CSV I/O,
SVG reports, and the cached Wikipedia client.
"""

from ._core import (
    CachedResponse,
    CorrelogramPoint,
    Diagnostics,
    Error,
    Graph,
    InputError,
    MoranScatter,
    NodeData,
    NotRewireableError,
    NullKind,
    NullResult,
    NullSpec,
    OfflineError,
    PageRecord,
    PlantedPartition,
    PlotStyle,
    PropagationSpec,
    Quadrant,
    Tail,
    WeightKind,
    WeightMatrix,
    WikiCache,
    WikiClient,
    WikiOptions,
    __version__,
    assortativity_continuous,
    bfs_distances,
    binary_adjacency,
    build_graph,
    canonical_title,
    center,
    conditional_permutation_local,
    configuration_local,
    configuration_null,
    correlogram,
    coscia_rho,
    distance_class,
    distance_classes,
    double_edge_swap,
    er_graph,
    file_digest,
    geary_c,
    getis_ord_global,
    getis_ord_local,
    global_moran,
    is_connected,
    karate,
    lag,
    lee_l,
    local_moran,
    moran_scatter,
    pearson_p_two_sided,
    pearson_r,
    permutation_null,
    planted_partition,
    propagate,
    read_edge_list,
    read_node_values,
    render_correlogram,
    render_local_histogram,
    render_scatter,
    restricted,
    row_normalized,
    url_encode,
    value_propagation,
    write_edge_list,
    write_values_csv,
)

__all__ = [name for name in dir() if not name.startswith("_")]
