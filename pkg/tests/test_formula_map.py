import pytest

from almost_abelian.formula_map import (
    BEGIN,
    END,
    FORMULA_OPERATIONS,
    default_map_path,
    parse_map,
    verify_map,
)


@pytest.fixture(scope="module")
def text():
    return default_map_path().read_text(encoding="utf-8")


def test_map_is_complete(text):
    rep = verify_map(text)
    assert rep.passed, rep.to_dict()
    assert sorted(parse_map(text)) == sorted(FORMULA_OPERATIONS)


def test_default_path_is_used():
    assert verify_map().passed


def test_removed_row_is_missing(text):
    lines = [ln for ln in text.splitlines() if "`flow.run_flow`" not in ln]
    rep = verify_map("\n".join(lines))
    assert rep.missing == ("flow.run_flow",) and not rep.passed


def test_phantom_rows(text):
    extra = "| `tensors.does_not_exist` | x | y |\n| `made.up` | x | y |\n"
    rep = verify_map(text.replace(END, extra + END))
    assert rep.phantom == ("made.up", "tensors.does_not_exist")


def test_registered_but_missing_callable(text):
    rep = verify_map(text, operations=FORMULA_OPERATIONS + ("core.nothing",))
    assert "core.nothing" in rep.missing


def test_duplicate_rows(text):
    row = next(ln for ln in text.splitlines() if ln.startswith("| `core.bracket`"))
    rep = verify_map(text.replace(END, row + "\n" + END))
    assert rep.duplicates == ("core.bracket",)


def test_markers_required():
    with pytest.raises(ValueError):
        parse_map("no table here")
    assert parse_map(f"{BEGIN}\n| `core.bracket` | f | n |\n{END}") == ["core.bracket"]
