import json
from math import comb

import pytest

from vilab.cli import main
from vilab.errors import CharacteristicMismatch, DimensionError, GroupSpecError, ParseError
from vilab.scenarios import SCENARIOS, get_scenario, parse_inputs, run_scenario

TORUS_JSON = '{"variant":"diagonal","freeWeights":[[-1],[4]],"torsion":[]}'
F_TORUS = "x(1,1)*x(1,2)*x(1,3)*x(1,4)*x(2,4)"


# -- scenarios ----------------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(SCENARIOS))
def test_bundled_scenario_passes(name):
    report = run_scenario(get_scenario(name))
    bad = [r.to_json() for r in report.records if r.status != "pass"]
    assert report.passed, bad
    assert report.summary()["fail"] == 0


@pytest.mark.parametrize("name", ["torus-p2", "mu3-char2-n2", "classical-so"])
def test_scenario_reports_byte_identical(name):
    a = run_scenario(get_scenario(name)).dumps()
    b = run_scenario(get_scenario(name)).dumps()
    assert a == b
    assert "elapsed" not in a
    assert "elapsed" in run_scenario(get_scenario(name)).dumps(timing=True)


def test_scenario_expected_values_have_provenance():
    for name in SCENARIOS:
        for q in get_scenario(name).queries:
            assert q.provenance in ("PAPER", "DERIVED", "TRIVIAL")


def test_generator_counts_by_formula():
    # independent counts: row-1 degree 2p times row-2 degree 1 over two columns
    # gives (2p + 1) * 2; degree-3 monomials in 2*2 and 3*3 variables
    counts = {name: q.expected for name in ("torus-p2", "torus-p3", "mu3-char2-n2", "mu3-char2-n3")
              for q in get_scenario(name).queries if q.op == "generators"}
    assert counts == {"torus-p2": 5 * 2, "torus-p3": 7 * 2,
                      "mu3-char2-n2": comb(4 + 2, 3), "mu3-char2-n3": comb(9 + 2, 3)}


def test_torus_p2_contents():
    report = run_scenario(get_scenario("torus-p2"))
    by_op = {}
    for r in report.records:
        by_op.setdefault(r.op, []).append(r)
    assert by_op["member"][0].verdict == "nonmember"
    assert by_op["proot"][0].verdict == 1
    cert = by_op["proot"][0].certificate
    assert cert["relation"] == "X^2 - r" and cert["reexpands"] is True


def test_scenario_caps_give_indeterminate():
    report = run_scenario(get_scenario("torus-p2"), {"max_terms": 20})
    assert report.status == "indeterminate"
    assert report.summary()["indeterminate"] >= 1


def test_scenario_text_rendering():
    text = run_scenario(get_scenario("mu3-char2-n2")).text()
    assert text.splitlines()[0].startswith("scenario mu3-char2-n2")
    assert text.splitlines()[-1].startswith("PASS")


def test_unknown_scenario():
    with pytest.raises(ValueError):
        get_scenario("nope")


def test_scenario_validation():
    s = get_scenario("torus-p2")
    from vilab.matrix_ring import RingCtx

    s.ring = RingCtx(3, 4, 2)
    with pytest.raises(DimensionError):
        run_scenario(s)


# -- parse_inputs ------------------------------------------------------------------


def test_parse_inputs_examples():
    f, H, ctx = parse_inputs("x(1,1)^2 - 3*x(2,1)", None, "2x4@p2")
    assert f == parse_inputs("x(1,1)^2 + x(2,1)", None, "2x4@p2")[0]
    assert (ctx.n, ctx.d, ctx.p) == (2, 4, 2) and H is None
    with pytest.raises(GroupSpecError):
        parse_inputs(None, '{"variant":"diagonal","torsion":[{"modulus":1,"weights":[0,0]}]}', "2x2@p0")


def test_parse_inputs_errors():
    with pytest.raises(ParseError) as err:
        parse_inputs("x(1,1) +\n (x", None, "2x2@p0")
    assert err.value.line == 2
    with pytest.raises(DimensionError):
        parse_inputs("x(1,5)", None, "2x4@p0")
    with pytest.raises(DimensionError):
        parse_inputs(None, TORUS_JSON, "3x3@p2")
    with pytest.raises(ParseError):
        parse_inputs(None, None, "two by four")


def test_characteristic_coherence():
    f, _, ctx = parse_inputs("1/2*x(1,1)", None, "1x1@p3")
    assert f.p == 3
    with pytest.raises((ZeroDivisionError, CharacteristicMismatch, ParseError)):
        parse_inputs("1/3*x(1,1)", None, "1x1@p3")


# -- CLI ---------------------------------------------------------------------------


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_invariants(capsys):
    code, out, _ = run(capsys, "invariants", "--ring", "2x2@p2", "--group", TORUS_JSON, "--max-deg", "8")
    assert code == 0 and json.loads(out)["count"] == 10


def test_cli_member_exit_codes(capsys, tmp_path):
    poly = tmp_path / "f.txt"
    poly.write_text(F_TORUS + "\n")
    group = tmp_path / "torus.json"
    group.write_text(TORUS_JSON)
    code, out, _ = run(capsys, "member", "--ring", "2x4@p2", "--group", str(group), "--poly", str(poly))
    assert code == 1 and json.loads(out)["verdict"] == "nonmember"
    code, out, _ = run(capsys, "member", "--ring", "2x4@p2", "--group", TORUS_JSON,
                       "--poly", "x(1,1)^4*x(2,1)")
    js = json.loads(out)
    assert code == 0 and js["verdict"] == "member" and js["reexpands"] is True
    code, out, _ = run(capsys, "member", "--ring", "2x4@p2", "--group", TORUS_JSON,
                       "--poly", F_TORUS, "--max-terms", "20")
    assert code == 2 and json.loads(out)["verdict"] == "indeterminate"


def test_cli_member_explicit_gens(capsys, tmp_path):
    gens = tmp_path / "gens.txt"
    gens.write_text("# one per line\nx(1,1)\n")
    code, out, _ = run(capsys, "member", "--ring", "1x2@p0", "--poly", "x(1,1)*x(1,2)", "--gens", str(gens))
    assert code == 0


def test_cli_proot_and_deltapow(capsys):
    code, out, _ = run(capsys, "proot", "--ring", "2x4@p2", "--group", TORUS_JSON, "--poly", F_TORUS)
    js = json.loads(out)
    assert code == 0 and js["level"] == 1 and js["relation"] == "X^2 - r" and js["reexpands"]
    sl = '{"variant":"rooted","kind":"SL","n":2}'
    code, out, _ = run(capsys, "deltapow", "--ring", "2x3@p0", "--group", sl,
                       "--poly", "x(1,1)*x(2,3) - x(1,3)*x(2,1)")
    assert code == 0 and json.loads(out)["level"] == 0
    code, out, _ = run(capsys, "deltapow", "--ring", "2x2@p0", "--gens", "x(1,1)*x(2,2) - x(1,2)*x(2,1)",
                       "--poly", "x(1,1)", "--e-max", "1")
    assert code == 1 and json.loads(out)["status"] == "notFound"


def test_cli_span_hweight_phiprime(capsys):
    code, out, _ = run(capsys, "span", "--ring", "1x2@p0", "--poly", "x(1,1)")
    assert code == 0 and json.loads(out)["components"]["1"]["dimension"] == 2
    code, out, _ = run(capsys, "hweight", "--weight", "2,1,0")
    assert code == 0 and json.loads(out) == {"weight": [2, 1, 0], "h": 4}
    code, out, _ = run(capsys, "phiprime", "--ring", "1x2@p0", "--poly", "x(1,2)")
    assert code == 0 and json.loads(out)["text"] == "(x(1,1)) ⊗ (g(1,2))"
    code, out, _ = run(capsys, "hweight", "--weight", "1,0", "--emit", "text")
    assert "h: 1" in out


def test_cli_coverage(capsys):
    sl = '{"variant":"rooted","kind":"SL","n":2}'
    code, out, _ = run(capsys, "coverage", "--ring", "2x3@p5", "--group", sl)
    js = json.loads(out)
    assert code == 0 and js["annotation"] and all(r["covered"] for r in js["results"])
    pairs = '[{"poly": "x(1,1)", "weight": [1, 0, 0]}]'
    code, out, _ = run(capsys, "coverage", "--ring", "2x3@p5", "--group", sl, "--pairs", pairs)
    assert code == 1


def test_cli_scenario(capsys):
    code, out, _ = run(capsys, "scenario", "mu3-char2-n2")
    assert code == 0 and json.loads(out)["summary"]["status"] == "pass"
    code, out, _ = run(capsys, "scenario", "torus-p2", "--emit", "text")
    assert code == 0 and out.strip().splitlines()[-1].startswith("PASS")
    code, out, _ = run(capsys, "scenario", "torus-p2", "--max-terms", "20")
    assert code == 2


@pytest.mark.parametrize("argv", [
    ["member", "--ring", "2x4@p4", "--poly", "x(1,1)", "--gens", "x(1,1)"],
    ["member", "--ring", "2x4@p2", "--poly", "x(1,", "--gens", "x(1,1)"],
    ["member", "--ring", "2x4@p2", "--poly", "x(1,1)"],
    ["invariants", "--ring", "2x2@p2", "--group", '{"variant":"rooted","kind":"SL","n":2}', "--max-deg", "2"],
    ["invariants", "--ring", "2x2@p2", "--group", "{not json", "--max-deg", "2"],
    ["scenario", "does-not-exist"],
    ["member", "--ring"],
    [],
])
def test_cli_input_errors_exit_3(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        raise SystemExit(main(argv))
    assert exc.value.code == 3
