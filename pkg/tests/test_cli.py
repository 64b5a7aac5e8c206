import json

from divlat.cli import main
from divlat.corpus import KINDS, gen_corpus
from divlat.serialize import problem_from_json, problem_to_json
from divlat.numberring import ZZ


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


ROT3_JSON = {"rows": 2, "cols": 2, "entries": [[0, -1], [1, -1]]}
MINUS_I2_JSON = {"rows": 2, "cols": 2, "entries": [[-1, 0], [0, -1]]}


class TestSubcommands:
    def test_classify_prints_order(self, tmp_path, capsys):
        assert main(["classify", write(tmp_path, "m.json", ROT3_JSON)]) == 0
        out = capsys.readouterr().out
        assert "order: 3" in out

    def test_root_finds_quarter_turn(self, tmp_path, capsys):
        rc = main(["root", write(tmp_path, "m.json", MINUS_I2_JSON), "--s", "2", "--bound", "1"])
        assert rc == 0
        assert "[[0, -1], [1, 0]]" in capsys.readouterr().out

    def test_fitting_output(self, tmp_path, capsys):
        rc = main(["fitting", write(tmp_path, "m.json", {"rows": 2, "cols": 2, "entries": [0, 0, 0, 2]})])
        assert rc == 0
        out = capsys.readouterr().out
        assert "direct and full: no" in out

    def test_spectrum(self, tmp_path, capsys):
        rc = main(["spectrum", write(tmp_path, "m.json", MINUS_I2_JSON), "--s-max", "4", "--bound", "2"])
        assert rc == 0
        out = capsys.readouterr().out
        assert "s=4: no-certificate" in out

    def test_verify_identity_consistent(self, tmp_path, capsys):
        problem = {
            "ring": "Z",
            "operator": {"rows": 2, "cols": 2, "entries": [[1, 0], [0, 1]]},
            "S": {"geometric": {"base": 2, "scale": 1}},
            "witnesses": [
                {"s": 2, "matrix": {"rows": 2, "cols": 2, "entries": [[1, 0], [0, 1]]}},
                {"s": 4, "matrix": {"rows": 2, "cols": 2, "entries": [[1, 0], [0, 1]]}},
            ],
            "name": "cavachi-identity",
        }
        rc = main(["verify", write(tmp_path, "p.json", problem)])
        assert rc == 0
        assert "CONSISTENT" in capsys.readouterr().out

    def test_units(self, tmp_path, capsys):
        rc = main(["units", write(tmp_path, "r.json", {"ring": {"quadratic": {"d": 2}}})])
        assert rc == 0
        assert "fundamental unit: [1, 1]" in capsys.readouterr().out

    def test_snf(self, tmp_path, capsys):
        rc = main(["snf", write(tmp_path, "m.json", {"rows": 2, "cols": 2, "entries": [[2, 0], [0, 3]]})])
        assert rc == 0
        assert "D = [[1, 0], [0, 6]]" in capsys.readouterr().out

    def test_supernat_pi_s(self, tmp_path, capsys):
        rc = main(["supernat", write(tmp_path, "s.json", {"pi_s": {"residue": {"a": 1, "m": 3}}})])
        assert rc == 0
        assert "except {3}" in capsys.readouterr().out

    def test_supernat_lcm(self, tmp_path, capsys):
        obj = {"lcm": [{"factors": {"2": "inf", "3": 1}}, {"factors": {"3": 2}}]}
        rc = main(["supernat", write(tmp_path, "s.json", obj)])
        assert rc == 0
        assert "2^inf*3^2" in capsys.readouterr().out


class TestJsonOutput:
    def test_classify_json_parses(self, tmp_path, capsys):
        rc = main(["classify", write(tmp_path, "m.json", ROT3_JSON), "--json"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["order"] == 3
        assert payload["cyclotomic_factorization"] == [[3, 1]]

    def test_verify_json_parses(self, tmp_path, capsys):
        problem = {
            "operator": {"rows": 1, "cols": 1, "entries": [[-1]]},
            "S": {"residue": {"a": 1, "m": 2}},
            "witnesses": [{"s": 3, "matrix": {"rows": 1, "cols": 1, "entries": [[-1]]}}],
        }
        rc = main(["verify", write(tmp_path, "p.json", problem), "--json"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["verdict"] == "CONSISTENT"
        assert payload["clause3"]["finite_order"] == 2


class TestExitCodes:
    def test_usage_error_is_2(self):
        assert main(["root"]) == 2  # missing required arguments
        assert main(["nosuchcommand"]) == 2

    def test_domain_error_is_1(self, tmp_path, capsys):
        bad = write(tmp_path, "m.json", {"rows": 2, "cols": 3, "entries": [[1, 2, 3], [4, 5, 6]]})
        assert main(["classify", bad]) == 1
        assert "error" in capsys.readouterr().err

    def test_schema_violation_is_1(self, tmp_path, capsys):
        bad = write(tmp_path, "m.json", {"rows": 1, "cols": 1, "entries": [[1]], "extra": True})
        assert main(["classify", bad]) == 1
        assert "unknown field" in capsys.readouterr().err

    def test_finite_pi_s_is_domain_error(self, tmp_path, capsys):
        bad = write(tmp_path, "s.json", {"pi_s": {"finite": [2, 3]}})
        assert main(["supernat", bad]) == 1
        assert "undefined for finite" in capsys.readouterr().err

    def test_missing_file_is_1(self, capsys):
        assert main(["classify", "/nonexistent/x.json"]) == 1


class TestThreadsDeterminism:
    def test_thread_count_never_changes_output(self, tmp_path, capsys):
        path = write(tmp_path, "m.json", MINUS_I2_JSON)
        outputs = []
        for threads in ("1", "3"):
            rc = main(["spectrum", path, "--s-max", "4", "--bound", "2", "--threads", threads, "--json"])
            assert rc == 0
            outputs.append(capsys.readouterr().out)
        assert outputs[0] == outputs[1]

    def test_root_large_box_threads(self, tmp_path, capsys):
        # bound 11 leaves the cached-table path, exercising the block scanner
        path = write(tmp_path, "m.json", MINUS_I2_JSON)
        outputs = []
        for threads in ("1", "4"):
            rc = main(["root", path, "--s", "2", "--bound", "11", "--threads", threads, "--json"])
            assert rc == 0
            outputs.append(capsys.readouterr().out)
        assert outputs[0] == outputs[1]


class TestCorpus:
    def test_kinds(self):
        assert set(KINDS) == {"finite-order", "nilpotent", "random", "powers"}

    def test_deterministic(self):
        a = gen_corpus("finite-order", 1)
        b = gen_corpus("finite-order", 1)
        assert [(p.name, p.operator) for p in a] == [(q.name, q.operator) for q in b]

    def test_finite_order_seed_1_includes_an_order_6_gl2_element(self):
        from divlat.classify import finite_order

        problems = gen_corpus("finite-order", 1)
        assert any(p.operator.rows == 2 and finite_order(p.operator) == 6 for p in problems)

    def test_powers_carry_ground_truth(self):
        for p in gen_corpus("powers", 1):
            assert len(p.witnesses) == 1
            (s, X), = p.witnesses
            assert X ** s == p.operator

    def test_nilpotent_entries_vanish(self):
        for p in gen_corpus("nilpotent", 1):
            assert (p.operator ** p.operator.rows).is_zero()

    def test_json_round_trip_lossless(self):
        for kind in KINDS:
            for p in gen_corpus(kind, 2):
                obj = problem_to_json(ZZ, None, p.operator, p.exponent_set, p.witnesses, name=p.name)
                back = problem_from_json(json.loads(json.dumps(obj)))
                assert back["operator"] == p.operator
                assert back["S"] == p.exponent_set
                assert back["witnesses"] == p.witnesses
                assert back["name"] == p.name

    def test_cli_corpus_emits_json(self, capsys):
        rc = main(["corpus", "powers", "--seed", "3"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert len(payload) == 10
        for entry in payload:
            problem_from_json(entry)


class TestQuadraticProblemEndToEnd:
    def test_gaussian_scalar_verify(self, tmp_path, capsys):
        problem = {
            "ring": {"quadratic": {"d": -1}},
            "module": {"z_rank": 2, "omega_action": [[0, -1], [1, 0]]},
            "operator": {"rows": 2, "cols": 2, "entries": [[0, -1], [1, 0]]},
            "S": {"residue": {"a": 1, "m": 4}},
            "witnesses": [{"s": 5, "matrix": {"rows": 2, "cols": 2, "entries": [[0, -1], [1, 0]]}}],
            "name": "gaussian-i",
        }
        rc = main(["verify", write(tmp_path, "p.json", problem), "--json"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["verdict"] == "CONSISTENT"
        assert payload["clause3"]["finite_order"] == 4

    def test_fitting_json_bases_in_hnf(self, tmp_path, capsys):
        rc = main(["fitting", write(tmp_path, "m.json",
                                    {"rows": 2, "cols": 2, "entries": [[0, 0], [0, 1]]}),
                   "--json"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["gen_kernel"]["basis"] == [[1, 0]]
        assert payload["image_part"]["basis"] == [[0, 1]]
        assert payload["restriction"]["entries"] == [[1]]

    def test_rational_witness_diagnostic_through_cli(self, tmp_path, capsys):
        problem = {
            "operator": {"rows": 2, "cols": 2, "entries": [[1, 1], [0, 1]]},
            "witnesses": [{"s": 2, "matrix": {"rows": 2, "cols": 2,
                                              "entries": [[1, "1/2"], [0, 1]]}}],
        }
        rc = main(["verify", write(tmp_path, "p.json", problem), "--json"])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        checks = payload["hypothesis_checks"]["witnesses"]
        assert checks[0]["reason"] == "witness not integral"
        assert payload["verdict"] == "INCONCLUSIVE"


class TestSupernatNu:
    def test_infinite_valuation(self, tmp_path, capsys):
        obj = {"nu": {"p": 2, "n": {"factors": {"2": "inf", "3": 1}}}}
        rc = main(["supernat", write(tmp_path, "s.json", obj)])
        assert rc == 0
        assert capsys.readouterr().out.strip() == "inf"

    def test_absent_prime(self, tmp_path, capsys):
        obj = {"nu": {"p": 5, "n": {"factors": {"2": "inf", "3": 1}}}}
        rc = main(["supernat", write(tmp_path, "s.json", obj), "--json"])
        assert rc == 0
        assert json.loads(capsys.readouterr().out) == {"nu": 0}
