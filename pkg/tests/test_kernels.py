import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclepack import kernels
from cyclepack.graph import INFINITE, build_graph, complete_graph, cycle_graph, sigma_t_reference
from cyclepack.packing import max_disjoint_cycles

from .strategies import graphs

BACKENDS = ["numpy"] + (["numba"] if kernels.HAVE_NUMBA else [])


@pytest.fixture(params=BACKENDS, scope="module")
def backend(request):
    old = kernels.backend()
    kernels.set_backend(request.param)
    yield request.param
    kernels.set_backend(old)


def test_edge_bits_round_trip():
    for n in range(8):
        for mask in (0, (1 << (n * (n - 1) // 2)) - 1, 0b1011):
            mask &= (1 << (n * (n - 1) // 2)) - 1
            assert kernels.edge_mask_of(kernels.graph_from_edge_mask(n, mask)) == mask
    assert kernels.edge_bit(0, 1) == 0 and kernels.edge_bit(2, 1) == 2 and kernels.edge_bit(0, 3) == 3


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.set_backend("fortran")


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=11), st.integers(1, 5))
def test_sigma_matches_reference(backend, g, t):
    assert kernels.sigma(g, t) == sigma_t_reference(g, t)


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=9, density=0.35), st.integers(1, 4))
def test_packing_number_matches_solver(backend, g, cap):
    k, _ = max_disjoint_cycles(g)
    assert kernels.packing_number(g, cap) == min(k, cap)


def test_packing_number_small_cases(backend):
    assert kernels.packing_number(complete_graph(6), 2) == 2
    assert kernels.packing_number(complete_graph(6), 3) == 2
    assert kernels.packing_number(cycle_graph(7), 3) == 1
    assert kernels.packing_number(build_graph(5, []), 3) == 0


def _reference_stats(n, mask, t, k):
    g = kernels.graph_from_edge_mask(n, mask)
    row = [g.edge_count, g.min_degree() if n else 0]
    for s in (2, 3, t):
        v = sigma_t_reference(g, s)
        row.append(-1 if v == INFINITE else v)
    row.append(min(max_disjoint_cycles(g)[0], k))
    return row


@pytest.mark.parametrize("n", [0, 1, 3, 5])
def test_batch_stats_all_graphs(backend, n):
    total = 1 << (n * (n - 1) // 2)
    masks = np.arange(total, dtype=np.int64)
    stats = kernels.batch_stats(n, masks, 4, 2)
    assert stats.shape == (total, 6)
    for mask in range(0, total, max(1, total // 150)):
        assert list(stats[mask]) == _reference_stats(n, mask, 4, 2)


def test_batch_stats_random_larger(backend):
    rng = np.random.default_rng(3)
    n = 9
    masks = rng.integers(0, 1 << 36, size=80, dtype=np.int64)
    stats = kernels.batch_stats(n, masks, 5, 3)
    for mask, row in zip(masks, stats):
        assert list(row) == _reference_stats(n, int(mask), 5, 3)


def test_backends_agree_on_six_vertices():
    if len(BACKENDS) < 2:
        pytest.skip("numba unavailable")
    masks = np.arange(1 << 15, dtype=np.int64)
    old = kernels.backend()
    try:
        out = {}
        for b in BACKENDS:
            kernels.set_backend(b)
            out[b] = kernels.batch_stats(6, masks, 5, 3)
    finally:
        kernels.set_backend(old)
    assert np.array_equal(out["numpy"], out["numba"])


def test_batch_rejects_large_orders():
    with pytest.raises(ValueError):
        kernels.batch_stats(12, np.zeros(1, dtype=np.int64))

