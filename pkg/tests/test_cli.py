import pytest

from colog import __version__
from colog.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


INFEASIBLE = (
    "meta: {version: 1}\n"
    "shippers: [S1]\n"
    "orders:\n"
    '  - {shipper: S1, client: C1, packets: 1, packet_size_kg: 999, window: "09:00-10:00"}\n'
    "trucks:\n"
    "  - {owner: S1, id: T1, capacity_kg: 100, size_tons: 1, emission: E1}\n"
    "network:\n"
    "  edges:\n"
    "    - [S1, C1, 5]\n"
)


class TestEntry:
    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as exit_info:
            main(["--version"])
        assert exit_info.value.code == 0
        assert capsys.readouterr().out.strip() == f"colog {__version__}"

    def test_help_exits_zero(self, capsys):
        with pytest.raises(SystemExit) as exit_info:
            main(["--help"])
        assert exit_info.value.code == 0
        assert "macro" in capsys.readouterr().out

    def test_no_arguments_is_a_usage_error(self, capsys):
        code, _, err = run(capsys)
        assert code == 64
        assert "usage error" in err

    def test_missing_subcommand_is_a_usage_error(self, capsys):
        code, _, err = run(capsys, "micro")
        assert code == 64
        assert "subcommand" in err


class TestScenarioResolution:
    def test_bundled_name(self, capsys):
        code, out, _ = run(capsys, "macro", "eval", "table6")
        assert code == 0
        assert "SN weight 60" in out

    def test_bundled_name_with_scn_suffix(self, capsys):
        code, out, _ = run(capsys, "macro", "eval", "fixtures/table6.scn")
        assert code == 0
        assert "SN weight 60" in out

    def test_real_file(self, capsys, tmp_path, sample1_text):
        path = tmp_path / "copy.scn"
        path.write_text(sample1_text, encoding="utf-8")
        code, out, _ = run(capsys, "macro", "eval", str(path))
        assert code == 0
        assert "best case: 5" in out

    def test_unknown_name_lists_fixtures(self, capsys):
        code, _, err = run(capsys, "macro", "eval", "missing.scn")
        assert code == 1
        assert "table6" in err


class TestMacroCommands:
    def test_eval_text(self, capsys):
        code, out, _ = run(capsys, "macro", "eval", "table6")
        assert code == 0
        assert "SN vector: 0, -50, 110" in out
        assert "SN weight 60" in out
        assert "CC vector: -20, -80, 80" in out
        assert "CC weight -20" in out

    def test_eval_csv(self, capsys):
        code, out, _ = run(capsys, "macro", "eval", "table6", "--format", "csv")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == (
            "case_id,b_signs,c_signs,sn_s,sn_e,sn_en,sn_weight,"
            "cc_s,cc_e,cc_en,cc_weight"
        )
        assert lines[1] == ",+-+,--+,0,-50,110,60,-20,-80,80,-20"

    def test_eval_sampled_cases(self, capsys):
        code, out, _ = run(capsys, "macro", "eval", "sample1")
        assert code == 0
        assert "case 5" in out
        assert "best case: 5" in out

    def test_enumerate(self, capsys):
        code, out, _ = run(capsys, "macro", "enumerate", "table6", "--top", "3")
        assert code == 0
        assert "64 sign assignments" in out
        body = [line for line in out.splitlines() if line.startswith("case ")]
        assert len(body) == 3
        assert "b=+++ c=+++" in body[0]

    def test_enumerate_rejects_zero_top(self, capsys):
        code, _, err = run(capsys, "macro", "enumerate", "table6", "--top", "0")
        assert code == 64
        assert "positive" in err


class TestMicroCommands:
    def test_filter_csv(self, capsys):
        code, out, _ = run(
            capsys, "micro", "filter", "sample1", "--format", "csv"
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "shipper,truck,c1,c2,c3,verdict,inference"
        assert len(lines) == 13
        assert "S2,S2:T3,n,y,y,Reject,PartiallySatisfied" in lines

    def test_assign_csv(self, capsys):
        code, out, _ = run(capsys, "micro", "assign", "sample1", "--format", "csv")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "shipper,trip_index,truck,orders,load_kg"
        assert any(line.startswith("S1,1,") for line in lines)

    def test_route_csv_reports_totals(self, capsys):
        code, out, _ = run(capsys, "micro", "route", "sample1", "--format", "csv")
        assert code == 0
        assert "S1-S6-C1-C3-C4" in out

    def test_plan_csv_sections(self, capsys):
        code, out, _ = run(
            capsys,
            "micro", "plan", "sample1", "--intents", "40,0,80", "--format", "csv",
        )
        assert code == 0
        for section in (
            "# intents", "# macro", "# compliance", "# assignment",
            "# routing", "# route_totals", "# emissions",
        ):
            assert section in out
        lines = out.splitlines()
        totals = lines[lines.index("# route_totals") + 2 :][:4]
        assert totals == ["FC,30", "PC,50", "NC,180", "FC+PC,80"]

    def test_plan_text_sections(self, capsys):
        code, out, _ = run(capsys, "micro", "plan", "sample1")
        assert code == 0
        for section in (
            "== intents ==", "== collaboration square ==", "== compliance ==",
            "== assignment ==", "== routing ==", "== emissions ==",
        ):
            assert section in out

    def test_plan_runs_are_deterministic(self, capsys):
        _, first, _ = run(capsys, "micro", "plan", "sample1", "--format", "csv")
        _, second, _ = run(capsys, "micro", "plan", "sample1", "--format", "csv")
        assert first == second

    def test_intents_conflict_is_a_usage_error(self, capsys):
        code, _, err = run(
            capsys,
            "micro", "filter", "sample1", "--intents", "40,0,80", "--from-macro", "5",
        )
        assert code == 64

    def test_from_macro_intents(self, capsys):
        code, out, _ = run(
            capsys, "micro", "filter", "sample1", "--from-macro", "5"
        )
        assert code == 0
        assert "macro case 5 (cc)" in out

    def test_infeasible_exits_2(self, capsys, tmp_path):
        path = tmp_path / "heavy.scn"
        path.write_text(INFEASIBLE, encoding="utf-8")
        code, _, err = run(
            capsys, "micro", "assign", str(path), "--intents", "40,0,80"
        )
        assert code == 2
        assert "infeasible" in err

    def test_bad_scenario_exits_1(self, capsys, tmp_path):
        path = tmp_path / "broken.scn"
        path.write_text("meta: {version: 2}\n", encoding="utf-8")
        code, _, err = run(capsys, "micro", "assign", str(path))
        assert code == 1
        assert "error" in err


class TestComplexityCommands:
    def test_effectors_text(self, capsys):
        code, out, _ = run(capsys, "complexity", "effectors", "effectors")
        assert code == 0
        assert "k_o 1100" in out
        assert "system state 1/1100" in out

    def test_effectors_csv_summary(self, capsys):
        code, out, _ = run(
            capsys, "complexity", "effectors", "effectors", "--format", "csv"
        )
        assert code == 0
        assert "# summary" in out
        assert "1100,1100,1/1100" in out

    def test_trio(self, capsys):
        code, out, _ = run(capsys, "complexity", "trio", "effectors")
        assert code == 0
        assert "r 1" in out
        assert "state NonChaotic" in out

    def test_trio_outside_regime_exits_2(self, capsys):
        code, _, err = run(
            capsys, "complexity", "trio", "effectors", "--complexity", "9999"
        )
        assert code == 2
        assert "infeasible" in err

    def test_spider_text(self, capsys):
        code, out, _ = run(capsys, "complexity", "spider")
        assert code == 0
        assert "classes: Intangible 3, SemiTangible 4, Tangible 1" in out

    def test_spider_csv(self, capsys):
        code, out, _ = run(capsys, "complexity", "spider", "--format", "csv")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "kind,name,link_before,link_after,node_class"
        assert "S,Shippers,I,T,SemiTangible" in lines


class TestFixturesFlag:
    def test_list(self, capsys):
        code, out, _ = run(capsys, "--fixtures", "list")
        assert code == 0
        assert out.splitlines() == [
            "effectors", "sample1", "sample2", "table6", "verification",
        ]

    def test_run_passes(self, capsys):
        code, out, _ = run(capsys, "--fixtures", "run", "verification")
        assert code == 0
        assert "[PASS]" in out
        assert "verification: PASS" in out

    def test_run_reports_published_values(self, capsys):
        code, out, _ = run(capsys, "--fixtures", "run", "sample2")
        assert code == 0
        assert "published" in out and "derived" in out

    def test_run_unknown_fixture(self, capsys):
        code, _, err = run(capsys, "--fixtures", "run", "nope")
        assert code == 1

    def test_bad_action(self, capsys):
        code, _, err = run(capsys, "--fixtures", "wipe")
        assert code == 64
