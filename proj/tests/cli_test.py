import atexit
import json
import os
import pathlib
import shutil
import subprocess
import sys
import tempfile
import unittest
import xml.etree.ElementTree as ET

import jsonschema

EXE = sys.argv.pop(1)
SCHEMAS = pathlib.Path(sys.argv.pop(1))
CACHE = tempfile.mkdtemp(prefix="expcurve_cli_")
atexit.register(shutil.rmtree, CACHE, True)


def run(*args, env=None):
    e = dict(os.environ, EXPCURVE_CACHE=CACHE)
    if env:
        e.update(env)
    return subprocess.run([EXE, *args], capture_output=True, text=True, env=e, timeout=600)


def validate(doc, name):
    schema = json.loads((SCHEMAS / f"{name}.schema.json").read_text())
    jsonschema.validate(doc, schema)


class Cli(unittest.TestCase):
    def json_of(self, name, *args):
        r = run(*args)
        self.assertEqual(r.returncode, 0, r.stderr)
        doc = json.loads(r.stdout)
        validate(doc, name)
        return doc

    def test_gen(self):
        doc = self.json_of("curve_record", "gen", "0", "3")
        self.assertEqual(doc["degree"], 6)
        self.assertEqual(self.json_of("curve_record", "gen", "2", "0")["degree"], 5)
        self.assertTrue((pathlib.Path(CACHE) / "curve_a0_b3.json").exists())
        validate(json.loads((pathlib.Path(CACHE) / "curve_a0_b3.json").read_text()), "curve_record")
        r = run("gen", "0", "0")
        self.assertEqual(r.returncode, 2)
        self.assertIn("no curve", r.stderr)

    def test_cache_env(self):
        with tempfile.TemporaryDirectory() as d:
            r = run("gen", "1", "1", env={"EXPCURVE_CACHE": d})
            self.assertEqual(r.returncode, 0)
            self.assertTrue((pathlib.Path(d) / "curve_a1_b1.json").exists())

    def test_genus(self):
        self.assertEqual(run("genus", "0", "3", "both", "--format", "text").stdout.strip(), "1 = 1")
        self.assertEqual(run("genus", "1", "2", "both", "--format", "text").stdout.strip(), "3 = 3")
        doc = self.json_of("genus", "genus", "5", "5", "formula")
        self.assertEqual(doc["formula"], 88)
        r = run("genus", "0", "3", "both")
        self.assertIn("WARN", r.stderr)
        self.assertEqual(run("genus", "0", "3", "sideways").returncode, 2)

    def test_singular(self):
        doc = self.json_of("singular", "singular", "0", "3")
        self.assertEqual(doc["genus"], 1)
        origin = [s for s in doc["singularities"] if s["point"] == "origin"][0]
        self.assertEqual(origin["delta"], 7)
        self.json_of("singular", "singular", "--poly", "y^2-x^3")

    def test_pipeline(self):
        doc = self.json_of("pipeline", "pipeline")
        self.assertTrue(doc["all_hold"])
        self.assertEqual(doc["weierstrass"], [0, 0, 0, -75, 74])
        doc = self.json_of("transport", "pipeline", "--transport", "1,0")
        self.assertEqual(doc["path"][-1], {"stage": "C3", "x": "-1/2", "y": "0"})
        self.assertEqual(run("pipeline", "--transport", "13,36").returncode, 2)

    def test_elliptic(self):
        E = "[0,0,0,-75,74]"
        self.assertEqual(self.json_of("elliptic", "elliptic", E, "conductor")["conductor"], "1584")
        self.assertEqual(self.json_of("elliptic", "elliptic", E, "torsion")["torsion"]["description"], "Z/2")
        self.assertEqual(self.json_of("elliptic", "elliptic", E, "points")["count"], 11)
        self.assertEqual(self.json_of("elliptic", "elliptic", E, "twist", "--other", "[0,1,0,-8,0]")["twist"], "3")
        self.assertTrue(self.json_of("elliptic", "elliptic", E, "certify", "--point", "-5,18")["non_torsion"])
        self.json_of("elliptic", "elliptic", E, "invariants")
        self.json_of("elliptic", "elliptic", E, "minimal")
        self.assertEqual(run("elliptic", "[0,0,0,0,0]", "torsion").returncode, 2)
        self.assertEqual(run("elliptic", E, "frobnicate").returncode, 2)

    def test_inflect(self):
        doc = self.json_of("inflect", "inflect", "1e-4")
        self.assertLess(doc["width"]["rel_error"], 1e-3)
        r = run("inflect", "--sweep", "1e-5", "1e-3", "5")
        lines = r.stdout.strip().splitlines()
        self.assertEqual(lines[0], "c,R_measured,R_predicted,L_measured,L_predicted,ratio,rel_error")
        self.assertEqual(len(lines), 6)
        self.assertEqual(run("inflect", "0").returncode, 2)

    def test_plot(self):
        a = run("plot", "0", "3", "--res", "128")
        b = run("plot", "0", "3", "--res", "128", "--threads", "3")
        self.assertEqual(a.returncode, 0, a.stderr)
        self.assertEqual(a.stdout, b.stdout)
        root = ET.fromstring(a.stdout.encode())
        self.assertTrue(root.tag.endswith("svg"))
        self.assertEqual(root.get("version"), "1.1")
        for name in ["Q", "E"]:
            r = run("plot", "--curve", name, "--res", "64")
            self.assertEqual(r.returncode, 0, r.stderr)
            ET.fromstring(r.stdout.encode())
        with tempfile.TemporaryDirectory() as d:
            out = pathlib.Path(d) / "c2.svg"
            r = run("plot", "0", "2", "--window", "-1,1,-1,1", "--out", str(out))
            self.assertEqual(r.returncode, 0, r.stderr)
            ET.parse(out)
        self.assertEqual(run("plot", "0", "3", "--res", "8").returncode, 2)
        self.assertEqual(run("plot", "0", "3", "--window", "1,0,0,1").returncode, 2)

    def test_atlas(self):
        r = run("atlas", "2", "2", "--res", "32")
        self.assertEqual(r.returncode, 0, r.stderr)
        root = ET.fromstring(r.stdout.encode())
        self.assertEqual(r.stdout, run("atlas", "2", "2", "--res", "32").stdout)
        self.assertGreaterEqual(len(root.findall("{http://www.w3.org/2000/svg}g")), 6)

    def test_satellite(self):
        doc = self.json_of("satellite", "satellite", "--order", "2")
        self.assertEqual(doc["genus"], 1)
        self.json_of("satellite", "satellite", "--S", "x/(x^2+y^2)", "--order", "2", "--no-genus")
        self.assertEqual(run("satellite", "--derivation", "z").returncode, 2)

    def test_paper(self):
        r = run("paper", "--max-sum", "3", "--format", "json")
        self.assertEqual(r.returncode, 0, r.stderr)
        doc = json.loads(r.stdout)
        validate(doc, "scoreboard")
        self.assertGreaterEqual(doc["summary"]["total"], 20)
        self.assertEqual(doc["summary"]["fail"], 0)
        warns = [c for c in doc["checks"] if c["status"] == "WARN"]
        self.assertTrue(all("printed" in c["detail"] and "corrected" in c["detail"] for c in warns))

    def test_usage(self):
        self.assertEqual(run().returncode, 2)
        self.assertEqual(run("bogus").returncode, 2)
        self.assertEqual(run("--help").returncode, 0)
        self.assertEqual(run("gen", "0", "3", "--format", "svg").returncode, 2)


if __name__ == "__main__":
    unittest.main(verbosity=2)
