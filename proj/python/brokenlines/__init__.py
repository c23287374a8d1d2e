"""Broken-line decomposition of lattice flow fields and last passage percolation."""

import json

from ._brokenlines import (
    BrokenLinesError,
    Domain,
    FlowField,
    brick_json,
    check_q_duality,
    classify_triple,
    compose,
    decompose,
    field_from_birth,
    g_minus_h,
    lln_target,
    lpp,
    lpp_bruteforce,
    operator_r,
    operator_t,
    optimal_path_backward,
    q_kernel,
    render_brick_svg,
    render_lines_svg,
    run_cli,
    sample_field,
    time_reverse,
)
from . import _brokenlines as _ext


def check_r_invariance(triple, n=100000, seed=1):
    return json.loads(_ext.check_r_invariance(triple, n, seed))


def burke_exit_test(triple, n=3, m=3, samples=10000, seed=1):
    return json.loads(_ext.burke_exit_test(triple, n, m, samples, seed))


def lln_experiment(n, beta=1.0, dist="exp:1", replicas=20, seed=1):
    return json.loads(_ext.lln_experiment(n, beta, dist, replicas, seed))


def brick_diagram(field):
    return json.loads(brick_json(field))
