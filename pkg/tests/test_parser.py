import pytest

from percemon.errors import SpecError
from percemon.stql import ast as A
from percemon.stql.parser import parse


def test_exists_with_prob_atom():
    phi = parse("exists {id1} @ (prob(id1) > 0.8)")
    assert phi == A.Exists(("id1",), A.ProbCmpConst("id1", A.Cmp.GT, 0.8))


def test_pin_with_reversed_frame_constraint():
    # C_FRAME - f <= 3 normalizes to f - C_FRAME >= -3.
    phi = parse("pin (x, f) { C_FRAME - f <= 3 }")
    assert phi == A.Freeze("x", "f", A.FrameConstraint("f", A.Cmp.GE, -3))


def test_overlap_ratio_written_as_division():
    phi = parse("area(bbox(id1) & bbox(id2)) / area(bbox(id1)) >= 0.3")
    assert phi == A.AreaCmpRatio(
        A.SpatialIntersect(A.BBoxOf("id1"), A.BBoxOf("id2")),
        A.Cmp.GE,
        0.3,
        A.BBoxOf("id1"),
    )


def test_ratio_written_as_multiplication():
    assert parse("area(bbox(a)) >= 0.3 * area(bbox(b))") == A.AreaCmpRatio(
        A.BBoxOf("a"), A.Cmp.GE, 0.3, A.BBoxOf("b")
    )
    assert parse("prob(a) >= 0.5 * prob(b)") == A.ProbCmpRatio("a", A.Cmp.GE, 0.5, "b")
    assert parse("prob(a) / prob(b) >= 0.5") == A.ProbCmpRatio("a", A.Cmp.GE, 0.5, "b")


def test_time_constraint_both_orders():
    assert parse("x - C_TIME <= 0.5") == A.TimeConstraint("x", A.Cmp.LE, 0.5)
    assert parse("C_TIME - x < 1.5") == A.TimeConstraint("x", A.Cmp.GT, -1.5)


def test_negative_bounds():
    assert parse("f - C_FRAME > -6") == A.FrameConstraint("f", A.Cmp.GT, -6)
    assert parse("x - C_TIME > -0.5") == A.TimeConstraint("x", A.Cmp.GT, -0.5)


def test_id_comparisons():
    assert parse("id1 == id2") == A.IdEq("id1", "id2")
    assert parse("id1 != id2") == A.IdNeq("id1", "id2")


def test_class_comparisons():
    assert parse('class(a) == "car"') == A.ClassEqConst("a", "car")
    assert parse("class(a) == class(b)") == A.ClassEqVar("a", "b")
    assert parse('class(a) != "car"') == A.Not(A.ClassEqConst("a", "car"))


def test_string_escapes():
    assert parse(r'class(a) == "c\"x\\y"') == A.ClassEqConst("a", 'c"x\\y')


def test_dist_atom():
    phi = parse("dist(a, ct, b, lm) < 40")
    assert phi == A.EDCmp("a", A.ReferencePoint.CT, "b", A.ReferencePoint.LM, A.Cmp.LT, 40.0)


def test_offset_atoms():
    assert parse("lat(a, rm) < 795") == A.OffsetCmpConst(
        A.OffsetTerm(A.Axis.LAT, "a", A.ReferencePoint.RM), A.Cmp.LT, 795.0
    )
    assert parse("lon(a, tm) >= 2 * lat(b, bm)") == A.OffsetCmpRatio(
        A.OffsetTerm(A.Axis.LON, "a", A.ReferencePoint.TM),
        A.Cmp.GE,
        2.0,
        A.OffsetTerm(A.Axis.LAT, "b", A.ReferencePoint.BM),
    )


def test_spatial_grammar():
    phi = parse("nonempty(~bbox(a) & (empty | universe))")
    assert phi == A.SpatialExists(
        A.SpatialIntersect(
            A.Complement(A.BBoxOf("a")),
            A.SpatialUnion(A.EmptySet(), A.UniverseSet()),
        )
    )


def test_spatial_precedence_intersection_binds_tighter():
    phi = parse("nonempty(bbox(a) | bbox(b) & bbox(c))")
    assert phi == A.SpatialExists(
        A.SpatialUnion(A.BBoxOf("a"), A.SpatialIntersect(A.BBoxOf("b"), A.BBoxOf("c")))
    )


def test_boolean_precedence():
    assert parse("true and true or true") == A.Or(A.And(A.TrueConst(), A.TrueConst()), A.TrueConst())
    assert parse("true or true implies true") == A.Implies(
        A.Or(A.TrueConst(), A.TrueConst()), A.TrueConst()
    )
    assert parse("not true until true") == A.Until(A.Not(A.TrueConst()), A.TrueConst())
    assert parse("true until true until true") == A.Until(
        A.TrueConst(), A.Until(A.TrueConst(), A.TrueConst())
    )


def test_quantifier_body_extends_right():
    phi = parse("exists {a} @ prob(a) > 0.5 and true")
    assert phi == A.Exists(("a",), A.And(A.ProbCmpConst("a", A.Cmp.GT, 0.5), A.TrueConst()))


def test_pin_body_is_delimited():
    phi = parse("pin (x, _) { true } and true")
    assert phi == A.And(A.Freeze("x", None, A.TrueConst()), A.TrueConst())


def test_comments_and_whitespace():
    phi = parse(
        """
        # leading comment
        exists {a} @ (   # trailing comment
            prob(a) > 0.5
        )
        """
    )
    assert phi == A.Exists(("a",), A.ProbCmpConst("a", A.Cmp.GT, 0.5))


def _error_of(text):
    with pytest.raises(SpecError) as excinfo:
        parse(text)
    return excinfo.value


def test_error_carries_location():
    err = _error_of("exists {a} @\n  (prob(a) >< 0.5)")
    diag = err.diagnostics[0]
    assert diag.line == 2
    assert diag.column is not None


def test_unknown_function_reported():
    err = _error_of("probability(a) > 0.5")
    assert "unknown function" in err.diagnostics[0].message


def test_equality_rejected_for_prob():
    err = _error_of("prob(a) == 0.5")
    assert "==" in err.diagnostics[0].message or "class" in err.diagnostics[0].message


def test_float_frame_bound_rejected():
    err = _error_of("f - C_FRAME <= 2.5")
    assert "integer" in err.diagnostics[0].message


def test_frame_constraint_accepts_equality():
    assert parse("f - C_FRAME == 0") == A.FrameConstraint("f", A.Cmp.EQ, 0)


def test_unknown_reference_point():
    err = _error_of("lat(a, xx) > 1")
    assert "reference point" in err.diagnostics[0].message


def test_trailing_input_rejected():
    err = _error_of("true true")
    assert "trailing" in err.diagnostics[0].message


def test_empty_specification_rejected():
    err = _error_of("   # nothing here\n")
    assert "empty" in err.diagnostics[0].message


def test_unterminated_string():
    err = _error_of('class(a) == "car')
    assert err.diagnostics[0].kind == "lexical"


def test_scientific_notation():
    assert parse("prob(a) > 1e-06") == A.ProbCmpConst("a", A.Cmp.GT, 1e-06)
