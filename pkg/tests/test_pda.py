from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pdakit.constructions import SubsetGraphParams, theorem3_pda, valid_params
from pdakit.errors import InvalidPdaError, MalformedPdaError, ParseError
from pdakit.pda import Pda, parse_pda, scheme_params, serialize_pda, verify_pda


def brute_force_valid(p):
    """C1, C2 and C3 evaluated literally over every ordered pair of cells."""
    F, K = p.F, p.K
    stars = {sum(1 for j in range(F) if p.cells[j][k] is None) for k in range(K)}
    if len(stars) != 1:
        return False
    present = {c for row in p.cells for c in row if c is not None}
    if present != set(range(1, p.S + 1)):
        return False
    cells = [(j, k) for j in range(F) for k in range(K)]
    for j1, k1 in cells:
        for j2, k2 in cells:
            if (j1, k1) == (j2, k2):
                continue
            s = p.cells[j1][k1]
            if s is None or p.cells[j2][k2] != s:
                continue
            if j1 == j2 or k1 == k2:
                return False
            if p.cells[j1][k2] is not None or p.cells[j2][k1] is not None:
                return False
    return True


def test_a42_report(a42):
    r = verify_pda(a42)
    assert r.valid and r.violations == ()
    assert (r.K, r.F, r.Z, r.S, r.g) == (4, 6, 3, 4, 3)


def test_single_star():
    r = verify_pda(Pda(((None,),)))
    assert r.valid
    assert (r.K, r.F, r.Z, r.S, r.g) == (1, 1, 1, 0, None)


def test_c3a_violation_reported(a42):
    r = verify_pda(a42.replace(1, 1, 1))
    assert not r.valid
    c3a = [v for v in r.violations if v.condition == "C3a"]
    assert any(v.color == 1 and v.cells == ((1, 1), (1, 3)) for v in c3a)


def test_duplicate_in_column_is_c3a():
    p = Pda.from_rows([[1, "*"], [1, "*"]])
    conds = [v.condition for v in verify_pda(p).violations]
    assert "C3a" in conds


def test_c3b_violation_names_offending_cell():
    p = Pda.from_rows([[1, 2], [2, 1]])
    r = verify_pda(p)
    c3b = [v for v in r.violations if v.condition == "C3b"]
    assert c3b
    assert c3b[0].cells[:2] == ((1, 1), (2, 2))
    assert c3b[0].cells[2] in ((1, 2), (2, 1))


def test_c1_and_c2_violations():
    p = Pda.from_rows([["*", 3], [1, "*"], ["*", "*"]])
    r = verify_pda(p)
    conds = {(v.condition, v.column, v.color) for v in r.violations}
    assert ("C2", None, 2) in conds
    assert r.S == 3
    assert r.g is None
    p = Pda.from_rows([["*", 1], ["*", "*"]])
    assert [v.column for v in verify_pda(p).violations if v.condition == "C1"] == [2]


def test_violations_are_deterministic(a42):
    bad = a42.replace(1, 1, 4).replace(6, 4, 1)
    assert verify_pda(bad) == verify_pda(bad)
    assert verify_pda(bad).violations == verify_pda(Pda(bad.cells)).violations


def test_malformed_grid_rejected():
    with pytest.raises(MalformedPdaError):
        Pda(((None, 1), (1,)))
    with pytest.raises(MalformedPdaError):
        Pda(((0,),))
    with pytest.raises(MalformedPdaError):
        Pda(())


def test_scheme_params(a42):
    sp = scheme_params(a42)
    assert sp.memory_ratio == Fraction(1, 2) and sp.rate == Fraction(2, 3)
    assert sp.summary() == "4 6 3 4 3 1/2 2/3"
    full = scheme_params(Pda(((None,) * 3,) * 2))
    assert full.memory_ratio == 1 and full.rate == 0 and full.g is None
    t3 = scheme_params(theorem3_pda(SubsetGraphParams(6, 2, 3, 1)))
    assert t3.memory_ratio == Fraction(2, 5) and t3.rate == 3 and t3.F == 20


def test_scheme_params_rejects_invalid(a42):
    with pytest.raises(InvalidPdaError):
        scheme_params(a42.replace(1, 1, 1))


def test_serialize_a42(a42):
    text = serialize_pda(a42)
    assert text.count("\n") == 7 and text.endswith("\n")
    assert text.splitlines()[0] == "PDA 4 6"
    assert text.splitlines()[1] == "* * 1 2"
    assert parse_pda(text) == a42
    assert serialize_pda(parse_pda(text)) == text


@pytest.mark.parametrize(
    "text,line",
    [
        ("PDA 4 2\n* * 1 2\n* 1 *\n", 3),
        ("PDA 2 1\n* x\n", 2),
        ("PDA 2 1\n* 0\n", 2),
        ("* *\n", 1),
        ("PDA 2 1\n* *", 2),
        ("PDA 2 2\n* *\n", 2),
    ],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as exc:
        parse_pda(text)
    assert exc.value.line == line
    assert f"line {line}" in str(exc.value)


def test_parse_token_column():
    with pytest.raises(ParseError) as exc:
        parse_pda("PDA 2 1\n*  -1\n")
    assert exc.value.column == 4


def test_parse_rejects_gapped_colors():
    with pytest.raises(ParseError, match="contiguous"):
        parse_pda("PDA 2 2\n* 2\n2 *\n")


cells = st.one_of(st.none(), st.integers(1, 4))


@st.composite
def arrays(draw):
    F = draw(st.integers(1, 5))
    K = draw(st.integers(1, 5))
    return Pda(tuple(tuple(draw(cells) for _ in range(K)) for _ in range(F)))


@settings(max_examples=300)
@given(arrays())
def test_verify_matches_literal_definition(p):
    assert verify_pda(p).valid == brute_force_valid(p)


@settings(max_examples=200)
@given(arrays())
def test_serialization_roundtrip_when_contiguous(p):
    present = {c for row in p.cells for c in row if c is not None}
    if present == set(range(1, p.S + 1)):
        assert parse_pda(serialize_pda(p)) == p


def test_verify_accepts_all_constructions_up_to_8():
    for params in valid_params(8):
        r = verify_pda(theorem3_pda(params))
        assert r.valid, params
        assert r.g is not None and r.g * r.S == r.K * (r.F - r.Z)


def test_single_cell_mutations_never_pass_unnoticed():
    for params in valid_params(6):
        p = theorem3_pda(params)
        base = verify_pda(p)
        key = (base.K, base.F, base.Z, base.S)
        for j in range(1, p.F + 1):
            for k in range(1, p.K + 1):
                for s in range(1, p.S + 1):
                    if s == p.cell(j, k):
                        continue
                    r = verify_pda(p.replace(j, k, s))
                    assert not (r.valid and (r.K, r.F, r.Z, r.S) == key), (params, j, k, s)
