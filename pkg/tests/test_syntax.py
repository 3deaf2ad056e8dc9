import pytest

from proofenum.syntax import (Atom, Forall, Fn, Impl, NotNegative, Polarity,
                              SyntaxError_, Var, alpha_eq, all_names,
                              bound_vars, decompose_negative,
                              ensure_distinct_binders, fold_negative,
                              formula_size, free_vars, fresh_name,
                              is_positive, parse_formula,
                              polarity, rename, render)


def test_parse_render_roundtrip():
    texts = [
        "P",
        "P -> Q",
        "P -> Q -> R",
        "(P -> Q) -> R",
        "forall x. P(x)",
        "forall x. P(x) -> Q",
        "(forall x. P(x)) -> Q",
        "P(f(x), g(y, z)) -> Q",
        "((forall y. (P(y) -> Q) -> P(y) -> Q) -> Q) -> Q",
    ]
    for text in texts:
        f = parse_formula(text)
        assert parse_formula(render(f)) == f


def test_parse_structure():
    assert parse_formula("P") == Atom("P")
    assert parse_formula("P(x)") == Atom("P", (Var("x"),))
    assert parse_formula("P -> Q") == Impl(Atom("P"), Atom("Q"))
    assert parse_formula("P -> Q -> R") == Impl(
        Atom("P"), Impl(Atom("Q"), Atom("R")))
    assert parse_formula("forall x. P -> Q") == Forall(
        "x", Impl(Atom("P"), Atom("Q")))
    assert parse_formula("P(f(x))") == Atom("P", (Fn("f", (Var("x"),)),))


def test_parse_errors():
    for bad in ["", "P ->", "(P", "forall . P", "P)", "P Q", "-> P"]:
        with pytest.raises(SyntaxError_):
            parse_formula(bad)


def test_polarity_basics():
    assert polarity(parse_formula("P")) is Polarity.BOTH
    assert polarity(parse_formula("P -> Q")) is Polarity.BOTH
    assert polarity(parse_formula("forall x. P(x)")) is Polarity.POSITIVE_ONLY
    assert polarity(
        parse_formula("(forall x. P(x)) -> Q")) is Polarity.NEGATIVE_ONLY
    assert polarity(
        parse_formula("((forall x. P(x)) -> Q) -> Q")) is Polarity.POSITIVE_ONLY
    assert polarity(
        parse_formula("((forall x. P(x)) -> Q) -> forall y. P(y)")
    ) is Polarity.POSITIVE_ONLY


def test_polarity_neither():
    # a forall on the left of a left-nested implication is neither
    f = parse_formula("(((forall x. P(x)) -> Q) -> Q) -> Q")
    assert is_positive(parse_formula("((forall x. P(x)) -> Q) -> Q"))
    assert polarity(f) is Polarity.NEGATIVE_ONLY
    g = parse_formula("((forall x. P(x)) -> forall y. P(y)) -> Q")
    assert polarity(g) is Polarity.NEITHER


def test_decompose_negative():
    f = parse_formula("P -> Q -> R")
    args, head = decompose_negative(f)
    assert args == (Atom("P"), Atom("Q"))
    assert head == Atom("R")
    assert fold_negative(args, head) == f
    with pytest.raises(NotNegative):
        decompose_negative(parse_formula("P -> forall x. Q(x)"))
    with pytest.raises(NotNegative):
        # argument is negative-only, so the whole formula is not negative
        decompose_negative(
            parse_formula("(((P -> forall x. Q(x)) -> Q) -> R)"))


def test_free_bound_vars():
    f = parse_formula("forall x. P(x, y) -> Q(z)")
    assert free_vars(f) == frozenset({"y", "z"})
    assert bound_vars(f) == frozenset({"x"})
    assert all_names(f) == frozenset({"x", "y", "z"})


def test_rename_capture_avoiding():
    f = parse_formula("forall x. P(x, y)")
    g = rename(f, {"y": "x"})
    # the binder must move out of the way of the incoming x
    assert isinstance(g, Forall)
    assert g.var != "x"
    assert alpha_eq(g, Forall("z", Atom("P", (Var("z"), Var("x")))))


def test_rename_simple():
    f = parse_formula("P(x) -> Q(y)")
    assert rename(f, {"x": "u", "y": "v"}) == parse_formula("P(u) -> Q(v)")
    assert rename(f, {}) == f


def test_fresh_name():
    assert fresh_name("x", {"x"}) == "x1"
    assert fresh_name("x", {"x", "x1"}) == "x2"
    assert fresh_name("x3", {"x3"}) == "x1"
    assert fresh_name("x1", {"x1", "x2", "x3"}) == "x4"


def test_ensure_distinct_binders():
    f = parse_formula("(forall x. P(x)) -> (forall x. Q(x)) -> R")
    g = ensure_distinct_binders(f)
    assert len(bound_vars(g)) == 2
    assert alpha_eq(f, g)
    assert ensure_distinct_binders(g) is g
    # free variables never get captured
    h = parse_formula("(forall x. P(x, y)) -> P(x, z)")
    k = ensure_distinct_binders(h)
    assert free_vars(k) == free_vars(h)
    assert not bound_vars(k) & free_vars(k)


def test_alpha_eq():
    assert alpha_eq(parse_formula("forall x. P(x)"),
                    parse_formula("forall y. P(y)"))
    assert not alpha_eq(parse_formula("forall x. P(x)"),
                        parse_formula("forall y. P(z)"))
    assert not alpha_eq(parse_formula("P(x)"), parse_formula("P(y)"))
    assert alpha_eq(parse_formula("P(x)"), parse_formula("P(y)"),
                    env=(("x", "y"),))


def test_formula_size():
    assert formula_size(parse_formula("P")) == 1
    assert formula_size(parse_formula("P -> Q")) == 3
    assert formula_size(parse_formula("forall x. P -> Q")) == 4
