import pytest

from proofenum.ljplus import (IllFormed, LamPf, LamTm, LJPlusSequent,
                              NamedContext, Spine, alpha_eq_sequent,
                              alpha_normalize, check_proof, oracle_enumerate,
                              proof_from_json, proof_to_json, render_proof,
                              rename_proof, term_height)
from proofenum.syntax import parse_formula


def seq(hyps, goal):
    return LJPlusSequent(
        NamedContext(tuple((n, parse_formula(t)) for n, t in hyps)),
        parse_formula(goal))


def test_term_height():
    assert term_height(Spine("a")) == 1
    assert term_height(Spine("a", (Spine("b"),))) == 2
    t = LamPf("a", parse_formula("P"), Spine("a"))
    assert term_height(t) == 2
    assert term_height(LamTm("x", t)) == 3


def test_render_proof():
    t = LamPf("a", parse_formula("P -> Q"),
              LamTm("x", Spine("a", (Spine("b"),))))
    assert render_proof(t) == "\\a:P -> Q. \\x. (a b)"
    assert render_proof(Spine("a")) == "a"


def test_json_roundtrip():
    t = LamPf("a", parse_formula("forall x. P(x) -> Q"),
              LamTm("y", Spine("a", (Spine("b"), Spine("c")))))
    assert proof_from_json(proof_to_json(t)) == t
    with pytest.raises(ValueError):
        proof_from_json({"kind": "nope"})


def test_check_proof_identity():
    s = seq([], "P -> P")
    t = LamPf("h", parse_formula("P"), Spine("h"))
    assert check_proof(s.context, t, s.goal)


def test_check_proof_wrong_annot():
    s = seq([], "P -> P")
    t = LamPf("h", parse_formula("Q"), Spine("h"))
    assert not check_proof(s.context, t, s.goal)


def test_check_proof_shape_errors():
    with pytest.raises(IllFormed):
        check_proof(NamedContext(), Spine("h"), parse_formula("P -> P"))
    with pytest.raises(IllFormed):
        check_proof(NamedContext((("h", parse_formula("P")),)),
                    LamTm("x", Spine("h")), parse_formula("P"))
    with pytest.raises(IllFormed):
        # head applied with wrong arity
        check_proof(NamedContext((("h", parse_formula("P -> Q")),)),
                    Spine("h"), parse_formula("Q"))


def test_check_proof_forall():
    s = seq([], "forall x. P(x) -> P(x)")
    t = LamTm("x", LamPf("h", parse_formula("P(x)"), Spine("h")))
    assert check_proof(s.context, t, s.goal)
    # alpha-variant binder is accepted
    t2 = LamTm("z", LamPf("h", parse_formula("P(z)"), Spine("h")))
    assert check_proof(s.context, t2, s.goal)
    # eigenvariable condition: binder free in the context is rejected
    s2 = seq([("g", "P(x) -> Q")], "forall x. Q")
    bad = LamTm("x", Spine("g", (Spine("h"),)))
    assert not check_proof(s2.context, bad, s2.goal)


def test_check_proof_spine():
    s = seq([("f", "P -> Q"), ("a", "P")], "Q")
    assert check_proof(s.context, Spine("f", (Spine("a"),)), s.goal)
    assert not check_proof(s.context, Spine("a"), s.goal)
    assert not check_proof(
        s.context, Spine("f", (Spine("f", (Spine("a"),)),)), s.goal)


def test_rename_proof_capture():
    t = LamTm("x", Spine("a"))
    # renaming y -> x under \x must not capture
    u = LamPf("h", parse_formula("P(y)"), t)
    r = rename_proof(u, {"y": "x"}, {})
    assert r.annot == parse_formula("P(x)")
    body = r.body
    assert isinstance(body, LamTm)
    assert body.body == Spine("a")

    v = LamTm("x", LamPf("h", parse_formula("P(y)"), Spine("h")))
    r2 = rename_proof(v, {"y": "x"}, {})
    assert r2.var != "x"
    assert r2.body.annot == parse_formula("P(x)")


def test_alpha_normalize():
    t1 = LamPf("a", parse_formula("P"), Spine("a"))
    t2 = LamPf("b", parse_formula("P"), Spine("b"))
    assert alpha_normalize(t1) == alpha_normalize(t2)
    t3 = LamTm("x", LamPf("a", parse_formula("P(x)"), Spine("a")))
    t4 = LamTm("y", LamPf("c", parse_formula("P(y)"), Spine("c")))
    assert alpha_normalize(t3) == alpha_normalize(t4)


def test_alpha_eq_sequent():
    s1 = seq([("a", "P(x) -> Q"), ("b", "P(x)")], "Q")
    s2 = seq([("u", "P(z)"), ("v", "P(z) -> Q")], "Q")
    assert alpha_eq_sequent(s1, s2)
    s3 = seq([("u", "P(z)"), ("v", "P(w) -> Q")], "Q")
    assert not alpha_eq_sequent(s1, s3)
    assert not alpha_eq_sequent(s1, seq([("a", "P(x) -> Q")], "Q"))


def test_oracle_identity():
    out = oracle_enumerate(seq([], "P -> P"), 3)
    assert len(out) == 1
    assert render_proof(out[0]) == "\\h0:P. h0"


def test_oracle_heights():
    s = seq([], "((P->Q)->Q)->Q")
    assert oracle_enumerate(s, 8) == []  # no proof exists at any height
    s2 = seq([], "((P->Q)->Q) -> (P->Q) -> Q")
    assert oracle_enumerate(s2, 5) == []
    out6 = oracle_enumerate(s2, 6)
    # the eta-long form applies h1 under a fresh abstraction
    assert [render_proof(t) for t in out6] == \
        ["\\h0:(P -> Q) -> Q. \\h1:P -> Q. (h0 \\h2:P. (h1 h2))"]
    # all outputs check
    for t in oracle_enumerate(s2, 8):
        assert check_proof(s2.context, t, s2.goal)


def test_oracle_deterministic():
    s = seq([], "((forall y. (P(y)->Q) -> (P(y)->Q)) -> Q) -> Q")
    a = [render_proof(t) for t in oracle_enumerate(s, 7)]
    b = [render_proof(t) for t in oracle_enumerate(s, 7)]
    assert a == b
    assert len(a) == 1
