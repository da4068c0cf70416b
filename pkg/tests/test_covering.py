import numpy as np
import pytest

import oracles
from modcover.covering import (
    BudgetExceededError,
    SearchBudget,
    bound_report,
    coset_leader_table,
    coset_weight_distribution,
    covering_radius,
    covering_radius_bfs,
    covering_radius_direct,
    covering_radius_of_set,
    covering_radius_syndrome,
    delsarte_bound,
    mattson_stack,
    sphere_covering_lower_bound,
)
from modcover.families import repetition_alpha, repetition_beta, simplex_alpha, simplex_beta
from modcover.linalg import LinearCode, enumerate_codewords
from modcover.ring import WeightMetric, Z2, Z4

M = WeightMetric
FULL2 = LinearCode(Z4, 2, [[1, 0], [0, 1]])


def random_code(rng, max_n=5, max_rows=3):
    n = int(rng.integers(1, max_n + 1))
    rows = rng.integers(0, 4, size=(int(rng.integers(1, max_rows + 1)), n))
    return LinearCode(Z4, n, rows)


def test_direct_examples():
    assert covering_radius_direct(FULL2, M.LEE).value == 0
    assert covering_radius_direct(repetition_alpha(2), M.LEE).value == 2
    assert covering_radius_direct(repetition_beta(4), M.EUCLIDEAN).value == 6


def test_syndrome_examples():
    assert covering_radius_syndrome(simplex_alpha(1), M.LEE).value == 5
    assert covering_radius_syndrome(simplex_alpha(1), M.EUCLIDEAN).value == 8
    zero = LinearCode(Z4, 1, [])
    assert covering_radius_syndrome(zero, M.LEE).value == 2


def test_bfs_examples():
    assert covering_radius_bfs(simplex_alpha(2).dual(), M.LEE, 3).value == 1
    assert covering_radius_bfs(simplex_beta(2).dual(), M.LEE, 3).value == 2
    assert covering_radius_bfs(FULL2, M.LEE, 0).value == 0


def test_bfs_interval_when_cap_too_small():
    report = covering_radius_bfs(repetition_alpha(3), M.LEE, 1)
    assert not report.exact
    assert (report.lo, report.hi) == (2, None)


@pytest.mark.parametrize("seed", range(25))
def test_engines_match_oracle(seed):
    rng = np.random.default_rng(seed)
    code = random_code(rng, max_n=4)
    words = oracles.span(code.rows.tolist(), code.n)
    for metric in M:
        want, witness = oracles.covering_radius(words, code.n, oracles.TABLES[metric.value])
        direct = covering_radius_direct(code, metric)
        syndrome = covering_radius_syndrome(code, metric)
        bfs = covering_radius_bfs(code, metric, 4 * code.n)
        assert direct.value == syndrome.value == bfs.value == want
        assert direct.witness == syndrome.witness == witness


def test_witness_attains_radius():
    report = covering_radius_direct(simplex_beta(2), M.LEE)
    words = enumerate_codewords(simplex_beta(2)).words
    table = M.LEE.element_weights(Z4).astype(np.int64)
    dists = table[(np.array(report.witness) - words) % 4].sum(axis=1)
    assert int(dists.min()) == report.value == 5


def test_witness_independent_of_threads():
    code = simplex_beta(2)
    one = covering_radius_syndrome(code, M.LEE, threads=1)
    two = covering_radius_syndrome(code, M.LEE, threads=2)
    assert one.value == two.value and one.witness == two.witness
    d1 = covering_radius_direct(code, M.LEE, threads=1)
    d2 = covering_radius_direct(code, M.LEE, threads=2)
    assert d1.value == d2.value and d1.witness == d2.witness


def test_direct_on_plain_word_set():
    # non-linear sets are fine for the direct engine
    words = np.array([[0, 0], [1, 2]], dtype=np.uint8)
    report = covering_radius_of_set(words, Z4, M.LEE)
    want, _ = oracles.covering_radius([(0, 0), (1, 2)], 2, oracles.LEE)
    assert report.value == want


def test_direct_budget_error_suggests_alternative():
    with pytest.raises(BudgetExceededError, match="syndrome"):
        covering_radius_direct(repetition_alpha(4), M.LEE, budget=SearchBudget(direct_evals=10))


def test_syndrome_budget_errors():
    with pytest.raises(BudgetExceededError):
        covering_radius_syndrome(repetition_alpha(4), M.LEE, budget=SearchBudget(visit=10))
    with pytest.raises(BudgetExceededError):
        covering_radius_syndrome(repetition_alpha(6), M.LEE, budget=SearchBudget(table_entries=10))


def test_auto_dispatch_degrades_to_bounds():
    # an infeasible instance still yields a sound interval, never a wrong exact
    code = LinearCode(Z4, 14, [[1] * 14])
    tiny = SearchBudget(direct_evals=10, visit=10, table_entries=10, bfs_visit=10)
    report = covering_radius(code, M.LEE, budget=tiny)
    assert not report.exact
    assert report.method == "bound_only"
    assert report.lo == sphere_covering_lower_bound(14, 4, 2)


def test_auto_uses_bfs_for_large_ambient_small_cosets():
    dual = simplex_alpha(2).dual()  # length 16: too big to stream, 16 cosets
    budget = SearchBudget(visit=1 << 20, direct_evals=1 << 20)
    report = covering_radius(dual, M.LEE, budget=budget)
    assert report.exact and report.value == 1
    assert report.method == "weight_bfs"


def test_monotonicity_adding_rows():
    rng = np.random.default_rng(7)
    for _ in range(10):
        code = random_code(rng, max_n=4, max_rows=2)
        extra = rng.integers(0, 4, size=(1, code.n))
        bigger = LinearCode(Z4, code.n, np.vstack([code.rows, extra]))
        for metric in (M.LEE, M.EUCLIDEAN):
            assert (
                covering_radius_direct(bigger, metric).value
                <= covering_radius_direct(code, metric).value
            )


def test_sphere_covering_examples():
    assert sphere_covering_lower_bound(1, 4, 2) == 0
    assert sphere_covering_lower_bound(1, 1, 2) == 2
    assert sphere_covering_lower_bound(4, 4, 2) == 3
    with pytest.raises(ValueError):
        sphere_covering_lower_bound(0, 1, 2)


def test_delsarte_examples():
    assert delsarte_bound(simplex_alpha(1).dual()) == 1
    assert delsarte_bound(simplex_alpha(2).dual()) == 1
    assert delsarte_bound(simplex_beta(2).dual()) == 2
    assert delsarte_bound(LinearCode(Z4, 1, [[1]])) == 0


def test_delsarte_unavailable_when_dual_too_large():
    with pytest.raises(BudgetExceededError):
        delsarte_bound(simplex_alpha(2), budget_k=8)


def test_mattson_stack_examples():
    c0 = c1 = repetition_alpha(1)
    stacked = mattson_stack(c0, c1, [[0]])
    assert stacked.n == 2
    r = covering_radius_direct(stacked, M.LEE).value
    assert r == 2  # oracle value; within r(C0) + r(C1) = 1 + 1
    zero = LinearCode(Z4, 1, [])
    stacked = mattson_stack(zero, repetition_beta(2), np.zeros((0, 2), dtype=int))
    assert stacked.n == 3
    with pytest.raises(ValueError):
        mattson_stack(repetition_alpha(2), repetition_beta(2), [[0]])


def test_coset_weight_distribution_examples():
    assert coset_weight_distribution(LinearCode(Z4, 1, [[1]]), M.LEE) == {0: 1}
    dist = coset_weight_distribution(repetition_beta(2), M.LEE)
    assert max(dist) == 2
    dist = coset_weight_distribution(repetition_alpha(1), M.LEE)
    assert dist == {0: 1, 1: 1}


def test_coset_leader_table_leaders():
    code = repetition_alpha(2)
    table = coset_leader_table(code, M.LEE, with_leaders=True)
    assert table.complete
    # every leader attains its recorded weight and leaders cover all cosets
    wt = M.LEE.element_weights(Z4).astype(np.int64)
    for key in range(len(table.weights)):
        leader = table.leaders[key]
        assert int(wt[leader].sum()) == int(table.weights[key])
        assert table.syndromes.keys_of(leader[None, :])[0] == key


def test_gray_transport_small():
    rng = np.random.default_rng(42)
    for _ in range(10):
        code = random_code(rng, max_n=4)
        lee = covering_radius_direct(code, M.LEE).value
        image = np.array(oracles.gray_image(sorted(enumerate_codewords(code).as_tuples())), dtype=np.uint8)
        ham = covering_radius_of_set(image, Z2, M.HAMMING).value
        assert lee == ham
