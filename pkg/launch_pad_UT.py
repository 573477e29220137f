#!/usr/bin/env python
import json
import shutil
import tempfile
import unittest
from pathlib import Path

from click.testing import CliRunner

from config.config_constants import MANIFEST_FILENAME, NO_COLOR_ENV, OPERATIONS_LOG_FILENAME
from experiments.synthetic_corpus import build_functions
from launch_pad import cli
from metrics.report_writer import parse_report
from utils.operations_manager import read_operations

TWO_ROW_INK = {
    "sample_id": "ink1",
    "writer_id": "w01",
    "strokes": [{"points": [[10 + 30 * i, 80, 100 * i], [10 + 30 * i, 120, 100 * i + 10]]} for i in range(5)]
    + [{"points": [[10 + 30 * i, 280, 1000 + 100 * i], [10 + 30 * i, 320, 1010 + 100 * i]]} for i in range(4)],
}

TAXONOMY_REF = ["ConflictError", "self", "a_b"]
TAXONOMY_HYP = ["Conflict Error", "silt", "a-b"]


class TestLaunchPad(unittest.TestCase):
    def setUp(self):
        self.tmp = Path(tempfile.mkdtemp())
        self.runner = CliRunner(env={NO_COLOR_ENV: "1"})
        self.clean_lines = list(build_functions(1, seed=2)[0].source_lines)

    def tearDown(self):
        shutil.rmtree(self.tmp, ignore_errors=True)

    def write(self, name, lines):
        path = self.tmp / name
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("".join(f"{line}\n" for line in lines), encoding="utf-8")
        return str(path)

    def invoke(self, *args):
        return self.runner.invoke(cli, [str(a) for a in args])

    def out(self, name):
        return self.tmp / name

    # segment ---------------------------------------------------------------

    def test_segment_reports_lines(self):
        ink = self.tmp / "ink.json"
        ink.write_text(json.dumps(TWO_ROW_INK), encoding="utf-8")
        result = self.invoke("segment", ink, "--out", self.out("seg"), "--line-gap-ratio", "0.5")
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertIn("ink1: 2 lines", result.output)
        rows = (self.out("seg") / "segments.txt").read_text(encoding="utf-8").splitlines()
        self.assertEqual(rows[1:], ["0\t0,1,2,3,4\t80.00\t120.00", "1\t5,6,7,8\t280.00\t320.00"])
        manifest = json.loads((self.out("seg") / MANIFEST_FILENAME).read_text(encoding="utf-8"))
        self.assertEqual(manifest["command"], "segment")
        self.assertEqual(manifest["config"]["segment_config"]["line_gap_ratio"], 0.5)

    def test_segment_malformed_file(self):
        ink = self.tmp / "bad.json"
        ink.write_text('{"sample_id": "x", "writer_id": "w", "strokes": [{"pts": []}]}', encoding="utf-8")
        result = self.invoke("segment", ink, "--out", self.out("seg"))
        self.assertEqual(result.exit_code, 2)
        self.assertIn("strokes[0].points", result.output)

    # inject ----------------------------------------------------------------

    def test_inject_is_deterministic(self):
        clean = self.write("clean.txt", self.clean_lines)
        for name in ("a", "b"):
            result = self.invoke("inject", clean, "--seed", 7, "--p-space", 0.5, "--out", self.out(name))
            self.assertEqual(result.exit_code, 0, result.output)
        for artifact in ("noisy.txt", "injection_log.tsv"):
            self.assertEqual((self.out("a") / artifact).read_bytes(), (self.out("b") / artifact).read_bytes())
        log_rows = (self.out("a") / "injection_log.tsv").read_text(encoding="utf-8").splitlines()[1:]
        self.assertIn(f"{len(log_rows)} errors injected", result.output)

    def test_inject_zero_noise_is_identity(self):
        clean = self.write("clean.txt", self.clean_lines)
        result = self.invoke("inject", clean, "--p-space", 0, "--p-symbol", 0, "--p-word", 0,
                             "--out", self.out("z"))
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertEqual((self.out("z") / "noisy.txt").read_text(encoding="utf-8"),
                         Path(clean).read_text(encoding="utf-8"))

    # correct ---------------------------------------------------------------

    def test_correct_worked_example(self):
        noisy = self.write("noisy.txt", ["cookie = name", "if Cookie. name == naue ;"])
        result = self.invoke("correct", noisy, "--out", self.out("c"))
        self.assertEqual(result.exit_code, 0, result.output)
        corrected = (self.out("c") / "corrected.txt").read_text(encoding="utf-8").splitlines()
        self.assertEqual(corrected, ["cookie = name", "if cookie.name == name:"])
        self.assertTrue((self.out("c") / "diagnostics.txt").exists())

    def test_correct_clean_file_unchanged(self):
        clean = self.write("clean.txt", self.clean_lines)
        result = self.invoke("correct", clean, "--out", self.out("c"))
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertEqual((self.out("c") / "corrected.txt").read_text(encoding="utf-8").splitlines(), self.clean_lines)

    def test_correct_threshold(self):
        noisy = self.write("noisy.txt", ["name = 1", "x = naue"])
        self.invoke("correct", noisy, "--threshold", 0.7, "--out", self.out("loose"))
        self.invoke("correct", noisy, "--threshold", 0.9, "--out", self.out("strict"))
        self.assertEqual((self.out("loose") / "corrected.txt").read_text(encoding="utf-8").splitlines()[1], "x = name")
        self.assertEqual((self.out("strict") / "corrected.txt").read_text(encoding="utf-8").splitlines()[1], "x = naue")

    def test_bad_threshold_is_config_error(self):
        noisy = self.write("noisy.txt", ["x = 1"])
        result = self.invoke("correct", noisy, "--threshold", 1.5, "--out", self.out("c"))
        self.assertEqual(result.exit_code, 3)

    # evaluate --------------------------------------------------------------

    def test_evaluate_identical(self):
        ref = self.write("ref.txt", self.clean_lines)
        result = self.invoke("evaluate", ref, ref, "--out", self.out("e"))
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertIn("WER: 0.00%", result.output)
        records = parse_report((self.out("e") / "report.csv").read_text(encoding="utf-8"))
        self.assertEqual((records[0]["wer"], records[0]["cer"]), (0.0, 0.0))

    def test_evaluate_taxonomy_fixture(self):
        ref = self.write("ref/sample.txt", TAXONOMY_REF)
        hyp = self.write("hyp/sample.txt", TAXONOMY_HYP)
        result = self.invoke("evaluate", Path(ref).parent, Path(hyp).parent, "--writer", "w9", "--out", self.out("e"))
        self.assertEqual(result.exit_code, 0, result.output)
        record = parse_report((self.out("e") / "report.csv").read_text(encoding="utf-8"))[0]
        self.assertEqual(record["writer_id"], "w9")
        self.assertEqual((record["word_errors"], record["symbol_errors"], record["space_errors"]), (1, 1, 1))

    def test_evaluate_json(self):
        ref = self.write("ref.txt", TAXONOMY_REF)
        hyp = self.write("hyp.txt", TAXONOMY_HYP)
        result = self.invoke("evaluate", ref, hyp, "--json", "--out", self.out("e"))
        self.assertEqual(result.exit_code, 0, result.output)
        payload = json.loads((self.out("e") / "report.json").read_text(encoding="utf-8"))
        self.assertEqual(payload["results"][0]["space_errors"], 1)

    def test_evaluate_empty_reference(self):
        empty = self.write("empty.txt", [])
        result = self.invoke("evaluate", empty, empty, "--out", self.out("e"))
        self.assertEqual(result.exit_code, 4)

    # sample-corpus ---------------------------------------------------------

    def _source_tree(self):
        functions = [
            "\n".join([f"def f{i}(a):"] + ["    a = a + 1"] * (9 + i) + ["    return a"]) + "\n"
            for i in range(3)
        ]
        src = self.tmp / "src"
        src.mkdir()
        (src / "mod.py").write_text("\n".join(functions), encoding="utf-8")
        return src

    def test_sample_corpus(self):
        src = self._source_tree()
        for name in ("s1", "s2"):
            result = self.invoke("sample-corpus", src, "--n", 2, "--seed", 1, "--out", self.out(name))
            self.assertEqual(result.exit_code, 0, result.output)
        first = (self.out("s1") / "index.txt").read_text(encoding="utf-8")
        self.assertEqual(first, (self.out("s2") / "index.txt").read_text(encoding="utf-8"))
        self.assertEqual(len(first.splitlines()), 2)

    def test_sample_corpus_too_many(self):
        result = self.invoke("sample-corpus", self._source_tree(), "--n", 10, "--out", self.out("s"))
        self.assertEqual(result.exit_code, 3)

    # experiment ------------------------------------------------------------

    def test_experiment_zero_noise(self):
        for i, sample in enumerate(build_functions(3, seed=4)):
            self.write(f"clean/f{i}.txt", sample.source_lines)
        result = self.invoke("experiment", self.tmp / "clean", "--p-space", 0, "--p-symbol", 0, "--p-word", 0,
                             "--out", self.out("x"))
        self.assertEqual(result.exit_code, 0, result.output)
        records = parse_report((self.out("x") / "corrected_report.csv").read_text(encoding="utf-8"))
        self.assertEqual([r["wer"] for r in records], [0.0, 0.0, 0.0])
        self.assertEqual(sorted(p.name for p in (self.out("x") / "logs").iterdir()), ["f0.tsv", "f1.tsv", "f2.tsv"])

    def test_experiment_needs_samples(self):
        (self.tmp / "nothing").mkdir()
        result = self.invoke("experiment", self.tmp / "nothing", "--out", self.out("x"))
        self.assertEqual(result.exit_code, 2)

    # replay ----------------------------------------------------------------

    def test_replay_reproduces_outputs(self):
        clean = self.write("clean.txt", self.clean_lines)
        result = self.invoke("inject", clean, "--seed", 11, "--p-word", 0.5, "--out", self.out("orig"))
        self.assertEqual(result.exit_code, 0, result.output)
        result = self.invoke("replay", self.out("orig") / MANIFEST_FILENAME, "--out", self.out("again"))
        self.assertEqual(result.exit_code, 0, result.output)
        for artifact in ("noisy.txt", "injection_log.tsv"):
            self.assertEqual((self.out("orig") / artifact).read_bytes(), (self.out("again") / artifact).read_bytes())
        operations = [r["operation_type"] for r in read_operations(self.out("again") / OPERATIONS_LOG_FILENAME)]
        self.assertEqual(operations, ["Manifest Replayed", "Command Started", "Command Completed"])

    def test_replay_rejects_garbage(self):
        bogus = self.write("manifest.json", ["{\"command\": 3}"])
        result = self.invoke("replay", bogus)
        self.assertEqual(result.exit_code, 2)


if __name__ == "__main__":
    unittest.main()
