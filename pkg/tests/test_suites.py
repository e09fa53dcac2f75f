import pytest

from supermax.suites import forms_in_use, run_suite, suite_lemma241, suite_signs


@pytest.mark.parametrize("seed", [1, 2])
def test_signs_other_seeds(seed):
    r = suite_signs(seed=seed, triples=50, pairs=30)
    assert r.ok, r.failures()


def test_lemma_without_registry_forms():
    r = suite_lemma241(include_registry=False)
    assert r.ok, r.failures()


def test_forms_in_use_includes_registry_forms():
    labels = [l for l, _ in forms_in_use()]
    assert any(l.startswith("T2R4") for l in labels)


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")
