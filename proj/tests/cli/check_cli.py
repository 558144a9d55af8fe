"""End-to-end checks of the nhgalois command line."""

import argparse
import json
import pathlib
import subprocess
import sys
import tempfile
import unittest

import jsonschema

ARGS = None
COMMANDS = ["lift", "certify", "ve", "monodromy", "analyze", "lift-compare"]

EXPECTED_EXIT = {
    "canonical_pair": {"lift": 0, "certify": 1, "ve": 2, "monodromy": 2, "analyze": 1, "lift-compare": 2},
    "euler_top": dict.fromkeys(COMMANDS, 0),
    "harmonic": dict.fromkeys(COMMANDS, 0),
    "linear_upper": dict.fromkeys(COMMANDS, 0),
    "minimal": {"lift": 0, "certify": 2, "ve": 2, "monodromy": 2, "analyze": 0, "lift-compare": 2},
    "noncommuting_pair": {"lift": 0, "certify": 1, "ve": 2, "monodromy": 2, "analyze": 1, "lift-compare": 2},
    "planar": dict.fromkeys(COMMANDS, 0),
    "riccati": dict.fromkeys(COMMANDS, 0),
    "symmetric_cubic": dict.fromkeys(COMMANDS, 0),
    "symmetric_cubic_order2": {"lift": 0, "certify": 2, "ve": 0, "monodromy": 0, "analyze": 0, "lift-compare": 0},
}


def run(*args):
    return subprocess.run([ARGS.binary, *args], capture_output=True, text=True, timeout=300)


class Cli(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        root = pathlib.Path(ARGS.source)
        cls.problems = root / "data" / "problems"
        cls.errors = root / "tests" / "data"
        cls.report_schema = jsonschema.Draft7Validator(json.loads((root / "schema" / "report.schema.json").read_text()))
        cls.problem_schema = jsonschema.Draft7Validator(json.loads((root / "schema" / "problem.schema.json").read_text()))

    def report(self, proc):
        doc = json.loads(proc.stdout)
        errors = [f"{list(e.path)}: {e.message}" for e in self.report_schema.iter_errors(doc)]
        self.assertEqual(errors, [])
        self.assertEqual(doc["exit_code"], proc.returncode)
        return doc

    def test_fixtures_match_problem_schema(self):
        for path in sorted(self.problems.glob("*.json")):
            with self.subTest(path.name):
                self.problem_schema.validate(json.loads(path.read_text()))

    def test_exit_codes_and_schema(self):
        for name, codes in EXPECTED_EXIT.items():
            for command, code in codes.items():
                with self.subTest(f"{name} {command}"):
                    proc = run(command, "-i", str(self.problems / f"{name}.json"), "--compact")
                    self.assertEqual(proc.returncode, code, proc.stderr)
                    doc = self.report(proc)
                    self.assertEqual(doc["command"], command)

    def test_error_fixtures(self):
        cases = {
            "bad_count.json": ("schema", "vector_field", None),
            "bad_parse.json": ("parse", "vector_field[1]", 3),
            "bad_option.json": ("schema", "options.order", None),
            "unknown_key.json": ("schema", "options.colour", None),
            "bad_solution.json": ("solution_check", "solution", None),
            "not_json.json": ("schema", "$", 2),
        }
        for name, (code, field, position) in cases.items():
            with self.subTest(name):
                proc = run("analyze", "-i", str(self.errors / name), "--compact")
                self.assertEqual(proc.returncode, 2)
                self.assertTrue(proc.stderr)
                doc = self.report(proc)
                self.assertEqual(doc["status"], "error")
                self.assertEqual(doc["error"]["code"], code)
                self.assertEqual(doc["error"]["field"], field)
                self.assertEqual(doc["error"].get("position"), position)

    def test_missing_solution(self):
        proc = run("ve", "-i", str(self.problems / "minimal.json"))
        self.assertEqual(proc.returncode, 2)
        doc = self.report(proc)
        self.assertEqual(doc["error"]["code"], "missing_section")
        self.assertIn("solution required", doc["error"]["message"])

    def test_analyze_content(self):
        doc = self.report(run("analyze", "-i", str(self.problems / "symmetric_cubic.json")))
        self.assertEqual(doc["status"], "pass")
        self.assertTrue(doc["certificate"]["all_exact"])
        self.assertIn("monodromy-level necessary condition", doc["caveat"])
        self.assertEqual(doc["lift_compare"]["verdict"], "pass")
        self.assertIn("total_seconds", doc["timing"])
        self.assertTrue(all(a["verdict"] == "pass" for a in doc["abelianity"]))

    def test_determinism(self):
        for path in sorted(self.problems.glob("*.json")):
            with self.subTest(path.name):
                first = run("analyze", "-i", str(path), "--no-timing")
                second = run("analyze", "-i", str(path), "--no-timing")
                self.assertEqual(first.stdout, second.stdout)
                self.assertNotIn("timing", json.loads(first.stdout))

    def test_output_file_and_overrides(self):
        with tempfile.TemporaryDirectory() as tmp:
            out = pathlib.Path(tmp) / "report.json"
            proc = run("monodromy", "-i", str(self.problems / "riccati.json"), "-o", str(out), "--order", "1",
                       "--base-point", "0.5,0.5", "--seed", "11")
            self.assertEqual(proc.returncode, 0, proc.stderr)
            self.assertEqual(proc.stdout, "")
            doc = json.loads(out.read_text())
            self.assertEqual(doc["seed"], 11)
            self.assertEqual(doc["input"]["options"]["order"], 1)
            self.assertEqual(doc["monodromy"][0]["base_point"], [0.5, 0.5])
            self.assertEqual([m["system"] for m in doc["monodromy"]], ["direct_ve1", "dual_ve_n"])

    def test_usage_errors(self):
        self.assertEqual(run("analyze").returncode, 2)
        self.assertEqual(run("frobnicate", "-i", str(self.problems / "minimal.json")).returncode, 2)
        self.assertEqual(run("analyze", "-i", "/nonexistent.json").returncode, 2)
        self.assertEqual(run("analyze", "-i", str(self.problems / "riccati.json"), "--order", "0").returncode, 2)
        version = run("--version")
        self.assertEqual(version.returncode, 0)
        self.assertIn("nhgalois", version.stdout)


if __name__ == "__main__":
    parser = argparse.ArgumentParser()
    parser.add_argument("--binary", required=True)
    parser.add_argument("--source", required=True)
    ARGS, rest = parser.parse_known_args()
    unittest.main(argv=[sys.argv[0], *rest], verbosity=1)
