"""Python bindings for the ifslab C++ library."""

from ifslab._core import (
    CompactSet,
    IfsSystem,
    IfslabError,
    Map,
    Point,
    Preset,
    Space,
    WitnessingSequence,
    alr_verify,
    apply_operator,
    compose,
    directed_hausdorff,
    epsilon_net,
    estimate_li_ls,
    fixed_set_check,
    gap_address,
    grid_snap,
    hausdorff_distance,
    iterate_orbit,
    make_affine,
    make_arc_alr,
    make_constant,
    make_disc_alr,
    make_identity,
    make_interval_alr,
    make_kwietniak_map,
    make_preset,
    make_retraction,
    make_rotation,
    point_set_distance,
    pointwise_test,
    preset_names,
    run_cli,
    set_thread_count,
    strict_refute,
    thread_count,
    witnessing_sequence,
)

__all__ = [name for name in dir() if not name.startswith("_")]
