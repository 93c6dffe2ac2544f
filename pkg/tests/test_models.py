import pytest

from src.core.models import (
    GrowthVector, ParseError, SuperDim, UnknownEntryError, UnsupportedEntryError,
    VerifyReport, VerifyStatus, WorkbenchConfig, WorkbenchError,
)


def test_superdim_parse_and_format():
    assert SuperDim.parse("8|6") == SuperDim(8, 6)
    assert SuperDim.parse(" 5 ") == SuperDim(5, 0)
    assert str(SuperDim(3, 2)) == "3|2"
    assert SuperDim(3, 2).format(is_super=False) == "5"


def test_superdim_arithmetic_uses_eps_squared_one():
    # (1 + eps)(2 + 3 eps) = 2 + 3 + (3 + 2) eps
    assert SuperDim(1, 1) * SuperDim(2, 3) == SuperDim(5, 5)
    assert SuperDim(2, 1) * 2 == SuperDim(4, 2)
    assert SuperDim(2, 1) + SuperDim(1, 0) == SuperDim(3, 1)
    assert SuperDim(4, 4).total == 8


@pytest.mark.parametrize("text", ["(8|6, 9|6)C", "(2,3,5)", "(0|6, 3|6, 3|8)"])
def test_growth_vector_roundtrip(text):
    assert str(GrowthVector.parse(text)) == text


def test_growth_vector_parse_details():
    g = GrowthVector.parse("(4,5)C")
    assert g.contact and not g.is_super
    assert g.totals() == (4, 5)
    assert g.depth == 2


def test_growth_vector_rejects_garbage():
    with pytest.raises(ParseError):
        GrowthVector.parse("4,5")


def test_exit_codes():
    assert UnknownEntryError.exit_code == 2
    assert UnsupportedEntryError.exit_code == 3
    assert issubclass(UnknownEntryError, UnsupportedEntryError)
    assert issubclass(WorkbenchError, ValueError)


def test_config_from_env(monkeypatch):
    monkeypatch.setenv("LIEWB_P", "3")
    monkeypatch.setenv("LIEWB_SEED", "7")
    monkeypatch.delenv("LIEWB_TRUNCATION", raising=False)
    config = WorkbenchConfig.from_env()
    assert (config.p, config.seed, config.truncation) == (3, 7, 2)
    assert WorkbenchConfig.from_env(p=5, seed=None).p == 5


def test_only_pass_is_ok():
    assert VerifyReport("x", VerifyStatus.PASS).ok
    assert not VerifyReport("x", VerifyStatus.DEVIATION).ok
    assert not VerifyReport("x", VerifyStatus.REFERENCE).ok
    assert not VerifyReport("x", VerifyStatus.FAIL).ok
    assert VerifyReport("x", VerifyStatus.PASS).to_dict()["status"] == "pass"
