"""Cyclic multiple-burst substitution channel: metric, balls, codes and reconstruction."""

from .core import (
    BurstError,
    CyclicInterval,
    ErrorPattern,
    ParameterError,
    Params,
    Word,
    burst_distance,
    burst_distance_oracle,
    burst_weight,
    burst_weights,
    decompose_disjoint,
    interval_gap,
    support,
)
from .balls import (
    Ball,
    BallSize,
    WordSet,
    ball_intersection,
    ball_size,
    count_ball,
    diameter,
    diametric_bound_check,
    enumerate_ball,
    intersection_size,
    levenshtein_intersection_formula,
    reconstruction_degree,
    reconstruction_degree_bound,
    shift,
    shift_to_fixed_point,
)
from .channel import ChannelSpec, ReadSet, b_order, generate_reads, sample_error
from .codes import (
    Code,
    check_burst_code,
    construct_gv,
    construct_matching_code,
    gv_floor,
    johnson_upper_bound,
)
from .recon import (
    AmbiguousReconstruction,
    InconsistentReads,
    ListResult,
    MajWord,
    bruteforce_list,
    list_decode_bruteforce,
    list_reconstruct,
    list_size_bound,
    majority_threshold,
    unique_reconstruct,
)

__version__ = "0.1.0"
