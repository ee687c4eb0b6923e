import pytest

from minorlab.blocks import block_decomposition
from minorlab.constructions import TruncationParams, build_G, half_grid
from minorlab.recipe import CANONICAL_G, Attach, Base, RecipeError, eval_recipe, parse_recipe

P = TruncationParams


def test_canonical_recipe_parses():
    r = parse_recipe(CANONICAL_G)
    assert r.statements == (Base(), Attach("K5", "<"), Attach("K33", ">="))
    assert str(r) == CANONICAL_G


def test_print_parse_identity_with_odd_spacing():
    text = "  base   halfgrid ;attach K5 where col<0;attach K33 where col >=0"
    assert str(parse_recipe(str(parse_recipe(text)))) == CANONICAL_G


@pytest.mark.parametrize(
    "text,needle",
    [
        ("attach K5 where col < 0;", "missing 'base"),
        ("base halfgrid; attach K7 where col < 0;", "unknown pattern"),
        ("base halfgrid; base halfgrid;", "duplicate"),
        ("attach K5 where col < 0; base halfgrid;", "first"),
        ("base halfgrid; attach K5 where col ! 0;", "unexpected character"),
        ("base halfgrid; attach K5 where row < 0;", "expected 'col'"),
        ("base halfgrid attach", "expected ';'"),
    ],
)
def test_parse_errors(text, needle):
    with pytest.raises(RecipeError) as info:
        parse_recipe(text)
    assert needle in str(info.value)


def test_error_position_points_at_token():
    with pytest.raises(RecipeError) as info:
        parse_recipe("base halfgrid; attach K7 where col < 0;")
    assert info.value.position == len("base halfgrid; attach ")


@pytest.mark.parametrize("m,h", [(1, 1), (2, 0), (3, 2)])
def test_canonical_recipe_reproduces_G(m, h):
    assert eval_recipe(parse_recipe(CANONICAL_G), P(m, h)) == build_G(P(m, h))


def test_base_only():
    assert eval_recipe(parse_recipe("base halfgrid"), P(2, 1)) == half_grid(P(2, 1))


def test_k5_everywhere():
    r = parse_recipe("base halfgrid; attach K5 where col < 0; attach K5 where col >= 0;")
    g = eval_recipe(r, P(2, 1))
    assert sum(1 for b in block_decomposition(g).blocks if len(b) == 5) == 5
