"""Smoke test for the Python bindings: build with `maturin develop` (or
install the wheel) and run `python crates/py/python/smoke_test.py`."""

import itertools
import math
import os

import gossip_rank as gr

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "..", "..", "core", "tests", "data")


def kendall_by_pairs(a, b):
    return sum((a[i] < a[j]) != (b[i] < b[j]) for i, j in itertools.combinations(range(len(a)), 2))


def main():
    assert gr.kendall_tau([1, 2, 3], [3, 2, 1]) == 3
    assert gr.kendall_tau([2, 4, 1, 3], [1, 2, 3, 4]) == kendall_by_pairs([2, 4, 1, 3], [1, 2, 3, 4])

    g = gr.Graph.generate("complete", 3)
    assert math.isclose(g.spectral_gap(), 1.0), g.spectral_gap()
    assert math.isclose(sum(g.edge_probabilities()), 1.0)
    grid = gr.Graph.generate("grid", 6, rows=2, cols=3)
    assert grid.is_bipartite and len(grid.edges) == 7

    prof = gr.Profile.mallows(31, 5, 0.4, seed=3, center=[1, 2, 3, 4, 5])
    assert (prof.n, prof.m, len(prof)) == (31, 5, 31)
    p = prof.pairwise()
    assert all(math.isclose(p[i][j] + p[j][i], 1.0) for i in range(5) for j in range(5) if i != j)
    rules = {r: prof.consensus(r) for r in ["borda", "copeland", "footrule", "kemeny"]}
    assert rules["kemeny"]["objective"] <= min(r["objective"] for r in rules.values()) + 1e-12

    truth = rules["borda"]["ranking"]
    sim = gr.Simulation("borda", prof, gr.Graph.generate("watts-strogatz", 31, seed=1, k=2), seed=7)
    start = sim.kendall_error(truth)
    sim.run(5000)
    assert sim.t == 5000 and sim.kendall_error(truth) <= start
    states = sim.states()
    # averaging conserves every coordinate's node sum
    initial = [sum(v[i] for v in prof.voters) for i in range(5)]
    assert all(math.isclose(sum(row[i] for row in states), initial[i]) for i in range(5))

    partial = gr.Profile([[1, 2, None], [None, 1, None], [2, 1, 3]])
    assert partial.has_partial
    try:
        partial.consensus("footrule")
    except ValueError:
        pass
    else:
        raise AssertionError("footrule on partial ballots must raise")
    try:
        gr.Profile.load("/nonexistent/profile.soc")
    except OSError:
        pass
    else:
        raise AssertionError("missing file must raise OSError")

    sushi = gr.Profile.load(os.path.join(DATA, "sushi_like.soc"))
    assert (sushi.n, sushi.m) == (5000, 10)

    table = gr.robustness("[experiment]\ntrials = 5\n[data]\nn = 30\nm = 5\n")
    assert [r["rule"] for r in table] == ["borda", "copeland", "footrule", "kemeny"]
    summary = gr.run("[experiment]\nmethods = [\"copeland\"]\niterations = 50\ntrials = 2\ncheckpoints = 3\n"
                     "[data]\nn = 10\nm = 4\n[graph]\nkinds = [\"complete\"]\n")
    assert {r["metric"] for r in summary} >= {"kendall-error", "pairwise-mse"}
    print("python smoke test passed")


if __name__ == "__main__":
    main()
