from pivotwalk import tuning


def test_geometric_search_recovers_shipped_gain():
    best = tuning.tune_geometric((150.0, 195.0, 300.0))
    assert best.params == (195.0,)
    assert best.steps == (267, 76)


def test_optim_search_keeps_only_runs_on_the_path():
    best = tuning.tune_optim((1.29,), (251188.6431509582,), ("zero",))
    assert best.params == ("zero", 1.29, 251188.6431509582)
    assert max(best.mean_error) <= 0.01
    assert tuning.tune_optim((1.29,), (251188.6431509582,), ("zero",), error_bound=1e-4) is None

