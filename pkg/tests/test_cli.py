"""End-to-end tests of the symquandle command line through main.run."""
import json

import pytest

from app.utils.matrix_io import format_table, load_golden, write_table
from main import run

Z4_SPACE = ["--ring", "Z4", "--dim", "2", "--gram", "0,2;2,0"]
GF4_SPACE = ["--ring", "GF(2^2)", "--dim", "2", "--gram", "0,1;1,0"]
TREFOIL = "O1+U2+O3+U1+O2+U3+"


@pytest.fixture
def golden_files(tmp_path):
    """The golden tables written out as matrix files."""
    paths = {}
    for name in ("m_v", "m_v_double_prime"):
        path = tmp_path / f"{name}.txt"
        write_table(load_golden(f"{name}.txt"), path)
        paths[name] = str(path)
    return paths


class TestQuandleCommands:
    """Test `quandle ...`."""

    def test_build_prints_matrix(self, capsys):
        """Z_4^2 with [[0,2],[2,0]] prints the corrected 16x16 table."""
        assert run(["quandle", "build", *Z4_SPACE]) == 0
        assert capsys.readouterr().out == format_table(load_golden("m_v_double_prime.txt"))

    def test_build_then_check(self, tmp_path, capsys):
        """A built matrix written with -o passes check."""
        path = tmp_path / "v.txt"
        assert run(["quandle", "build", *GF4_SPACE, "-o", str(path)]) == 0
        assert run(["quandle", "check", str(path)]) == 0
        assert "order 16: quandle" in capsys.readouterr().out

    def test_check_printed_table_fails(self, tmp_path, capsys):
        """The table as printed, with entry (4,16) = 12, is not a quandle."""
        path = tmp_path / "printed.txt"
        write_table(load_golden("m_v_double_prime.txt", apply_errata=False), path)
        assert run(["quandle", "check", str(path)]) == 1
        captured = capsys.readouterr()
        assert "NOT a quandle" in captured.out
        assert "error:" in captured.err

    def test_check_json(self, golden_files, capsys):
        """--json on the command gives the report."""
        assert run(["quandle", "check", golden_files["m_v"], "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["is_quandle"] is True
        assert payload["violations"] == []

    def test_missing_file(self, tmp_path, capsys):
        """An unreadable file is invalid input."""
        assert run(["quandle", "check", str(tmp_path / "missing.txt")]) == 1
        assert "Cannot read" in capsys.readouterr().err

    def test_qpoly(self, golden_files, capsys):
        """qp of the Z_2^4 quandle."""
        assert run(["quandle", "qpoly", golden_files["m_v"]]) == 0
        assert capsys.readouterr().out.strip() == "s^16t^16 + 15s^8t^8"

    def test_orbits_and_trivial_component(self, golden_files, capsys):
        """Orbits listed by smallest member; the trivial component is the radical."""
        assert run(["quandle", "orbits", golden_files["m_v_double_prime"]]) == 0
        assert capsys.readouterr().out.splitlines() == [
            "1", "2 4 10 12", "3", "5 7 13 15", "6 8 14 16", "9", "11",
        ]
        assert run(["quandle", "trivial-component", golden_files["m_v_double_prime"]]) == 0
        assert capsys.readouterr().out.strip() == "1 3 9 11"

    def test_iso(self, golden_files, capsys):
        """A table is isomorphic to itself through the identity."""
        assert run(["quandle", "iso", golden_files["m_v"], golden_files["m_v"]]) == 0
        assert capsys.readouterr().out.strip() == "isomorphic: " + " ".join(map(str, range(1, 17)))

    def test_example(self, capsys):
        """The cyclic quandle of order 3."""
        assert run(["quandle", "example", "cyclic", "--order", "3"]) == 0
        assert capsys.readouterr().out == "1 3 2\n3 2 1\n2 1 3\n"

    def test_alexander_needs_t(self, capsys):
        """--t is required for the alexander example."""
        assert run(["quandle", "example", "alexander", "--order", "5"]) == 1


class TestSymplecticCommands:
    """Test `symplectic ...`."""

    def test_radical(self, capsys):
        """Indices and vectors of the Z_4 radical."""
        assert run(["symplectic", "radical", *Z4_SPACE]) == 0
        assert capsys.readouterr().out.splitlines() == [
            "1: (0, 0)", "3: (2, 0)", "9: (0, 2)", "11: (2, 2)",
        ]

    def test_reduce_not_a_field(self, capsys):
        """Reduction over Z_4 exits 1."""
        assert run(["symplectic", "reduce", *Z4_SPACE]) == 1
        assert "field" in capsys.readouterr().err

    def test_isometric(self, capsys):
        """alpha = 1 and alpha = 3 over Z_4."""
        args = ["symplectic", "isometric", "--ring", "Z4", "--dim", "2", "--gram", "0,1;3,0"]
        assert run([*args, "--gram2", "0,3;1,0", "--json"]) == 0
        assert json.loads(capsys.readouterr().out)["isometric"] is True
        assert run([*args, "--gram2", "0,2;2,0"]) == 0
        assert capsys.readouterr().out.startswith("not isometric")

    def test_standard(self, capsys):
        """Standard Gram string with one radical row."""
        assert run(["symplectic", "standard", "--ring", "Z4", "--alphas", "1,2", "--radical", "1"]) == 0
        assert capsys.readouterr().out.strip() == "0,1,0,0,0;3,0,0,0,0;0,0,0,2,0;0,0,2,0,0;0,0,0,0,0"


class TestLinkAndInvariantCommands:
    """Test `link parse` and `invariant ...`."""

    def test_link_parse(self, capsys):
        """The trefoil's relations, one per crossing."""
        assert run(["link", "parse", "--gauss", TREFOIL]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == f"{TREFOIL}: 1 components, 3 crossings, 3 generators"
        assert lines[1:] == ["crossing 1: 2 ▷ 1 = 3", "crossing 2: 1 ▷ 3 = 2", "crossing 3: 3 ▷ 2 = 1"]

    def test_link_parse_spaced(self, capsys):
        """Whitespace inside tokens is accepted on the command line."""
        assert run(["link", "parse", "--gauss", "O1 + U1 +"]) == 0
        assert capsys.readouterr().out.splitlines()[0] == "O1+U1+: 1 components, 1 crossings, 1 generators"

    def test_huge_field_hits_cap(self, capsys):
        """An enormous prime field exits 2 without a primality test."""
        args = ["symplectic", "radical", "--ring", "GF(1000000000000000003^1)", "--dim", "2", "--gram", "0,1;-1,0"]
        assert run(args) == 2
        assert "exceeds table cap" in capsys.readouterr().err

    def test_bad_gauss(self, capsys):
        """A malformed code exits 1 with its position."""
        assert run(["link", "parse", "--gauss", "O1+X"]) == 1
        assert "position 3" in capsys.readouterr().err

    def test_unknot_phi_sqp(self, capsys):
        """qz + 15qz^4 for the unknot over GF(4)^2."""
        assert run(["invariant", "phi-sqp", "--gauss", "", *GF4_SPACE]) == 0
        assert capsys.readouterr().out.strip() == "qz + 15qz^4"

    def test_global_json(self, capsys):
        """--json before the group gives the full result record."""
        assert run(["--json", "invariant", "phi-sqp", "--gauss", "", *GF4_SPACE]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["count"] == 16
        assert payload["phi_e"] == "16q"
        assert payload["phi_sqp"] == "qz + 15qz^4"

    def test_count_from_file(self, tmp_path, capsys):
        """Trefoil colorings by a cyclic quandle read from a file."""
        path = tmp_path / "r3.txt"
        assert run(["quandle", "example", "cyclic", "--order", "3", "-o", str(path)]) == 0
        capsys.readouterr()
        assert run(["invariant", "count", "--gauss", TREFOIL, "--target-file", str(path)]) == 0
        assert capsys.readouterr().out.strip() == "9"
        assert run(["invariant", "phi-e", "--gauss", TREFOIL, "--target-file", str(path)]) == 0
        assert capsys.readouterr().out.strip() == "3q + 6q^3"
        assert run(["invariant", "subquandle-decomposition", "--gauss", TREFOIL,
                    "--target-file", str(path)]) == 0
        assert capsys.readouterr().out.strip() == "3q + 6q^3"

    def test_phi_sqp_needs_module(self, tmp_path, capsys):
        """A bare matrix file has no module, so phi-sqp exits 1."""
        path = tmp_path / "r3.txt"
        run(["quandle", "example", "cyclic", "--order", "3", "-o", str(path)])
        assert run(["invariant", "phi-sqp", "--gauss", TREFOIL, "--target-file", str(path)]) == 1

    def test_target_forms_exclusive(self, golden_files):
        """--target-file and --ring together are refused."""
        assert run(["invariant", "count", "--gauss", TREFOIL,
                    "--target-file", golden_files["m_v"], *Z4_SPACE]) == 1


class TestExitCodes:
    """Test usage errors and resource caps."""

    def test_usage_error(self, capsys):
        """A missing required option exits 1."""
        assert run(["quandle", "build", "--ring", "Z4"]) == 1
        assert "error:" in capsys.readouterr().err

    def test_unknown_group(self):
        """An unknown command exits 1."""
        assert run(["frobnicate"]) == 1

    def test_element_cap(self, capsys):
        """A 5^6-element table exits 2."""
        zero = ";".join(",".join("0" * 6) for _ in range(6))
        assert run(["quandle", "build", "--ring", "Z5", "--dim", "6", "--gram", zero]) == 2
        assert "ELEMENT_CAP" in capsys.readouterr().err

    def test_scan_bounds(self):
        """Moduli past SCAN_MAX_MODULUS exit 2."""
        assert run(["scan", "conjecture", "--moduli", "2..12"]) == 2

    def test_scan(self, capsys):
        """A small scan prints one line per modulus."""
        assert run(["scan", "conjecture", "--moduli", "2..4"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[-1] == "Z4 d=2: coincide; classes 0 | 1 3 | 2"
