import json
import subprocess
import sys

import pytest

from nvraag.cli import main
from nvraag.formats import element_to_text, read_element
from nvraag.nv import identity, is_identity

Z2_FREE_Z = "# Z^2 * Z\nv a\nv b\nv c\ne a b\n"
EDGELESS_PAIR = "v a\nv b\n"
Z2 = "v a\nv b\ne a b\n"
K3 = "v a\nv b\nv c\ne a b\ne b c\ne a c\n"
CONE = "v a\nv b\nv apex\ne a apex\ne b apex\n"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def embed(tmp_path, capsys, text, name="m", *extra):
    graph = tmp_path / f"{name}.txt"
    graph.write_text(text)
    code, out, err = run(capsys, "embed", graph, tmp_path / name, *extra)
    return code, out, tmp_path / name


def keyvals(out):
    return dict(line.split("=", 1) for line in out.splitlines() if "=" in line)


class TestEmbed:
    def test_z2_free_z(self, tmp_path, capsys):
        code, out, m = embed(tmp_path, capsys, Z2_FREE_Z)
        assert code == 0
        kv = keyvals(out)
        assert kv["dimension"] == "2" and kv["complementary_edges"] == "2"
        assert sorted(p.name for p in (m / "elements").iterdir()) == ["a.json", "b.json", "c.json"]
        manifest = json.loads((m / "manifest.json").read_text())
        assert manifest["assignment"]["subsets"] == {"a": [1], "b": [2], "c": [1, 2]}

    def test_edgeless_pair(self, tmp_path, capsys):
        code, out, _ = embed(tmp_path, capsys, EDGELESS_PAIR)
        assert code == 0 and keyvals(out)["dimension"] == "1"

    def test_complete_graph_rejected(self, tmp_path, capsys):
        code, _, _ = embed(tmp_path, capsys, K3)
        assert code == 2
        code, out, _ = embed(tmp_path, capsys, K3, "k", "--allow-complete")
        assert code == 0 and keyvals(out)["dimension"] == "1"

    def test_parse_error(self, tmp_path, capsys):
        code, _, _ = embed(tmp_path, capsys, "v a\ne a b\n")
        assert code == 1
        code, _, _ = run(capsys, "embed", tmp_path / "missing.txt", tmp_path / "out")
        assert code == 1

    def test_unknown_flag(self, capsys):
        assert run(capsys, "embed", "--bogus")[0] == 1
        assert run(capsys)[0] == 1


class TestEval:
    def test_words(self, tmp_path, capsys):
        _, _, m = embed(tmp_path, capsys, Z2_FREE_Z)
        code, out, _ = run(capsys, "eval", m)
        assert code == 0 and "identity" in out.splitlines()
        code, out, _ = run(capsys, "eval", m, "a", "b", "a^-1", "b^-1", "--out", tmp_path / "e.json")
        assert code == 0 and "identity" in out.splitlines()
        assert is_identity(read_element(tmp_path / "e.json"))
        code, out, _ = run(capsys, "eval", m, "a c a^-1 c^-1")
        assert code == 0 and "nontrivial" in out.splitlines()

    def test_edgeless_commutator(self, tmp_path, capsys):
        _, _, m = embed(tmp_path, capsys, EDGELESS_PAIR)
        code, out, _ = run(capsys, "eval", m, "a", "b", "a^-1", "b^-1")
        assert code == 0 and "nontrivial" in out.splitlines()

    def test_errors(self, tmp_path, capsys):
        _, _, m = embed(tmp_path, capsys, Z2_FREE_Z)
        assert run(capsys, "eval", m, "z")[0] == 1
        assert run(capsys, "eval", m, "a c a c", "--max-pieces", "3")[0] == 1


class TestCheck:
    def test_z2_free_z(self, tmp_path, capsys):
        _, _, m = embed(tmp_path, capsys, Z2_FREE_Z)
        report, figure = tmp_path / "r.tsv", tmp_path / "f.png"
        code, out, _ = run(capsys, "check", m, "--max-len", 3, "--report", report, "--figure", figure)
        assert code == 0
        assert keyvals(out)["counterexamples"] == "0"
        rows = report.read_text().splitlines()
        assert rows[0].split("\t")[:3] == ["length", "words", "trivial"]
        assert len(rows) == 5
        assert figure.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

    def test_free_abelian(self, tmp_path, capsys):
        _, _, m = embed(tmp_path, capsys, Z2, "z2", "--allow-complete")
        code, out, _ = run(capsys, "check", m, "--max-len", 6)
        assert code == 0 and keyvals(out)["counterexamples"] == "0"

    def test_corrupted_manifest(self, tmp_path, capsys):
        _, _, m = embed(tmp_path, capsys, Z2_FREE_Z)
        (m / "elements" / "c.json").write_text(element_to_text(identity(2)))
        code, out, _ = run(capsys, "check", m, "--max-len", 2)
        assert code == 3
        assert "counterexample: [c] trivial_in_raag=False maps_to_identity=True" in out

    def test_bad_length(self, tmp_path, capsys):
        _, _, m = embed(tmp_path, capsys, Z2_FREE_Z)
        assert run(capsys, "check", m, "--max-len", 0)[0] == 1


class TestVerify:
    def test_valid(self, tmp_path, capsys):
        _, _, m = embed(tmp_path, capsys, Z2_FREE_Z)
        code, out, _ = run(capsys, "verify-pingpong", m, "--out", tmp_path / "cert.txt")
        assert code == 0
        kv = keyvals(out)
        assert kv["certificate.valid"] == "true"
        assert {kv[f"condition{k}.status"] for k in range(1, 5)} == {"pass"}
        assert (tmp_path / "cert.txt").read_text() == out

    def test_assembled(self, tmp_path, capsys):
        _, _, m = embed(tmp_path, capsys, CONE)
        code, _, err = run(capsys, "verify-pingpong", m)
        assert code == 4 and "certificate unavailable" in err

    def test_corrupted_slices(self, tmp_path, capsys):
        _, _, m = embed(tmp_path, capsys, Z2_FREE_Z)
        data = json.loads((m / "manifest.json").read_text())
        s = data["slices"]["a"]
        s["S_plus"], s["S_minus"] = s["S_minus"], s["S_plus"]
        (m / "manifest.json").write_text(json.dumps(data))
        code, out, _ = run(capsys, "verify-pingpong", m)
        assert code == 3
        kv = keyvals(out)
        assert kv["condition1.status"] == "fail" and "condition1.witness.0" in kv


class TestRenderAndLemma:
    def test_lemma_then_render(self, tmp_path, capsys):
        code, out, _ = run(capsys, "lemma", "0,0", tmp_path / "h.json")
        assert code == 0
        kv = keyvals(out)
        assert kv["D"] == "1,2" and kv["pieces"] == "8"
        code, _, _ = run(capsys, "render", tmp_path / "h.json", tmp_path / "a.svg", "--title", "h")
        assert code == 0
        run(capsys, "render", tmp_path / "h.json", tmp_path / "b.svg", "--title", "h")
        svg = (tmp_path / "a.svg").read_bytes()
        assert svg == (tmp_path / "b.svg").read_bytes()
        assert svg.count(b'class="label"') == 16

    def test_render_needs_two_dimensions(self, tmp_path, capsys):
        run(capsys, "lemma", ",01,", tmp_path / "h.json")
        assert read_element(tmp_path / "h.json").dim == 3
        assert run(capsys, "render", tmp_path / "h.json", tmp_path / "x.svg")[0] == 5

    def test_lemma_errors(self, tmp_path, capsys):
        assert run(capsys, "lemma", ",", tmp_path / "h.json")[0] == 1
        assert run(capsys, "lemma", "0,2", tmp_path / "h.json")[0] == 1
        assert run(capsys, "render", tmp_path / "nothing.json", tmp_path / "x.svg")[0] == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nvraag.cli", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    for command in ("embed", "eval", "check", "verify-pingpong", "render", "lemma"):
        assert command in proc.stdout


@pytest.mark.parametrize("command", ["embed", "eval", "check", "verify-pingpong", "render", "lemma"])
def test_help_documents_defaults(command, capsys):
    assert main([command, "--help"]) == 0
    out = capsys.readouterr().out
    if command in ("eval", "check"):
        assert "default: 1000000" in out
