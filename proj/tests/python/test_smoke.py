"""End-to-end smoke tests for the python module."""

import math

import pytest

voterec = pytest.importorskip("voterec")


def test_bias_worked_example():
    assert abs(voterec.bias(10, 10, 1.423) - 0.17457) < 1e-5
    assert voterec.bias(0, 5, 1.2) == 1.0
    assert voterec.bias(5, 0, 1.2) == -1.0
    with pytest.raises(voterec.InputError):
        voterec.bias(0, 0, 1.0)


def test_tokenize_and_lexicon():
    assert voterec.tokenize("Rød, GRØNN blå!") == ["rød", "grønn", "blå"]
    left = [voterec.ArticleDoc("l1", "rød rød sak")]
    right = [voterec.ArticleDoc("r1", "blå blå sak")]
    lex = voterec.build_lexicon(left, right, 5, 1)
    assert [w.word for w in lex.left] == ["rød"]
    assert [w.word for w in lex.right] == ["blå"]
    assert lex.left[0].pmi > 0


def test_small_pipeline_by_hand():
    cfg = voterec.SynthConfig()
    cfg.n_users = 20
    cfg.n_articles = 8
    cfg.rng_seed = 3
    data = voterec.generate(cfg)
    assert len(data.corpus) == 8
    assert len(data.log.events) > 0

    scores = voterec.rescale_per_user(voterec.raw_scores(data.log))
    fcfg = voterec.FactorizationConfig()
    fcfg.latent_dim = 3
    fcfg.max_epochs = 300
    fcfg.rng_seed = 3
    result = voterec.factorize(scores, fcfg)
    assert result.final_cost <= result.initial_cost
    completed = voterec.merge(scores, result)

    profile = voterec.ballots_from_scores(completed)
    committee = voterec.elect(profile, voterec.Rule.K_BORDA, 3)
    assert len(committee.winners) == 3
    assert len(set(committee.winners)) == 3

    sat = voterec.satisfaction(committee, completed, 3)
    assert 0.0 <= sat <= 1.0

    greedy = voterec.chamberlin_courant_greedy(profile, 2)
    exact = voterec.chamberlin_courant_exact(profile, 2)
    assert len(greedy.winners) == len(exact.winners) == 2


def test_run_pipeline_deterministic(tmp_path):
    def run(sub):
        cfg = voterec.default_config()
        cfg.kappa = 3
        cfg.rules = [voterec.Rule.SNTV, voterec.Rule.K_BORDA]
        cfg.synth.n_users = 25
        cfg.synth.n_articles = 10
        cfg.factorization.latent_dim = 4
        cfg.factorization.max_epochs = 250
        cfg.lexicon.top_n = 8
        cfg.lexicon.min_count = 1
        cfg.paths.out_dir = str(tmp_path / sub)
        return cfg, voterec.run_pipeline(cfg)

    cfg_a, rows_a = run("a")
    cfg_b, rows_b = run("b")
    assert [r.rule for r in rows_a] == [voterec.Rule.SNTV, voterec.Rule.K_BORDA]
    for ra, rb in zip(rows_a, rows_b):
        assert ra.satisfaction == rb.satisfaction
        assert ra.bias == rb.bias
        assert 0.0 <= ra.satisfaction <= 1.0
        assert -1.0 <= ra.bias <= 1.0
        assert ra.rho > 0 and math.isfinite(ra.rho)

    run_dir = tmp_path / "a" / voterec.run_dir_name(cfg_a)
    report = (run_dir / "report.md").read_text()
    assert "| Election Method | Satisfaction | Bias |" in report
    assert "SNTV" in report and "k-Borda" in report

    # Same computation, different destination: identical run dir names.
    assert voterec.run_dir_name(cfg_a) == voterec.run_dir_name(cfg_b)


def test_errors_surface_as_python_exceptions():
    profile = voterec.BallotProfile()
    profile.candidates = ["a", "b"]
    profile.voters = ["v1"]
    profile.rankings = [[0, 1]]
    with pytest.raises(voterec.InputError):
        voterec.sntv(profile, 5)

    big = voterec.BallotProfile()
    big.candidates = [f"c{i:02d}" for i in range(26)]
    big.voters = ["v1", "v2"]
    big.rankings = [list(range(26)), list(reversed(range(26)))]
    with pytest.raises(voterec.InstanceTooLargeError):
        voterec.chamberlin_courant_exact(big, 13)
