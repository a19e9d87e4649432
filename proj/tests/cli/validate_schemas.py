#!/usr/bin/env python3
"""Runs ybt subcommands and validates each JSON report against its schema.

usage: validate_schemas.py <ybt binary> <schema dir>
"""

import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

BASE = "https://ybt.invalid/schemas/"

CASES = [
    ("verify-ybe", ["verify", "ybe", "--family", "r-alpha-beta", "--alpha", "0.5", "--beta", "1.0"], 0),
    ("verify-ybe", ["verify", "ybe", "--family", "r-alpha-beta", "--alpha", "0.5", "--beta", "0.5"], 1),
    ("verify-ybe", ["verify", "ybe", "--family", "permutation"], 0),
    ("verify-ybe", ["verify", "ybe", "--family", "identity"], 0),
    ("verify-ybe", ["verify", "ybe", "--family", "frt", "--q", "0.7"], 0),
    ("verify-ybe", ["verify", "ybe", "--family", "universal", "--m", "1", "--q", "1.5"], 0),
    ("verify-ybe", ["verify", "ybe", "--family", "asep", "--q", "0.5", "--grid", "0.2:0.9:0.1"], 0),
    ("verify-ybe", ["verify", "ybe", "--family", "fused", "--l", "2", "--q", "0.5"], 0),
    ("verify-reflection", ["verify", "reflection", "--q", "0.5", "--alpha", "0.6", "--gamma", "0.1"], 0),
    ("verify-reflection", ["verify", "reflection", "--side", "right", "--q", "0.5", "--beta", "0.4", "--delta", "0.2"], 0),
    ("verify-hecke", ["verify", "hecke", "--family", "frt", "--q", "0.7"], 0),
    ("verify-hecke", ["verify", "hecke", "--family", "permutation"], 0),
    ("verify-markov", ["verify", "markov", "--q", "0.5"], 0),
    ("rep-check", ["rep-check", "--m", "4", "--q", "1.5"], 0),
    ("universal-r", ["universal-r", "--l", "1", "--m", "1", "--q", "0.7"], 0),
    ("universal-r", ["universal-r", "--l", "1", "--m", "2", "--q", "0.3"], 0),
    ("asep-stationary", ["asep", "stationary", "--L", "4", "--q", "0.5", "--alpha", "0.6", "--beta", "0.4",
                         "--gamma", "0.1", "--delta", "0.2", "--open"], 0),
    ("asep-stationary", ["asep", "stationary", "--L", "5", "--q", "0.3", "--particles", "2"], 0),
    ("mpa", ["mpa", "--L", "4", "--q", "0.5", "--alpha", "0.6", "--beta", "0.4", "--gamma", "0.1", "--delta", "0.2"], 0),
    ("fuse", ["fuse", "--l", "3", "--m", "2", "--z", "0.25", "--q", "0.5", "--method", "both"], 0),
    ("fuse", ["fuse", "--l", "2", "--m", "2", "--z", "3.0", "--q", "0.7", "--method", "recurrence"], 0),
    ("sample6v", ["--seed", "5", "sample6v", "--b1", "0.3", "--b2", "0.6", "--width", "8", "--height", "8",
                  "--boundary", "step"], 0),
    ("twprob", ["twprob", "--t", "1", "--q", "0.5", "--y", "0,1", "--x", "1,2"], 0),
    ("twprob", ["twprob", "--t", "1", "--q", "0.5", "--y", "0", "--x", "1", "--no-oracle"], 0),
    ("oscillator-hermite", ["oscillator", "hermite", "--max-degree", "6", "--x", "0.5,1.5"], 0),
    ("oscillator-fock", ["oscillator", "fock", "--cutoff", "8"], 0),
    ("oscillator-js", ["oscillator", "js", "--cutoff", "6"], 0),
]


def main() -> int:
    binary, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    schemas = {p.name.removesuffix(".schema.json"): json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
    registry = Registry().with_resources(
        (s["$id"], Resource.from_contents(s)) for s in schemas.values())
    for s in schemas.values():
        jsonschema.Draft202012Validator.check_schema(s)

    failures = 0
    covered = set()
    for name, args, expected_code in CASES:
        covered.add(name)
        proc = subprocess.run([binary, *args], capture_output=True, text=True)
        label = " ".join(args)
        if proc.returncode != expected_code:
            print(f"FAIL {label}: exit {proc.returncode}, expected {expected_code}: {proc.stderr.strip()}")
            failures += 1
            continue
        report = json.loads(proc.stdout)
        for schema in ("envelope", name):
            validator = jsonschema.Draft202012Validator(schemas[schema], registry=registry)
            errors = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
            for e in errors:
                print(f"FAIL {label} against {schema}: {'/'.join(map(str, e.path))}: {e.message}")
            failures += len(errors)
        # pass must agree with the residuals and their tolerances.
        tol = report["params"]["tol"]
        expect = all(v is not None and v <= tol[k] for k, v in report["residuals"].items())
        if expect != report["pass"]:
            print(f"FAIL {label}: pass={report['pass']} but residuals give {expect}")
            failures += 1
        print(f"ok   {label}")

    unused = set(schemas) - covered - {"envelope"}
    for name in sorted(unused):
        print(f"FAIL schema {name} is not exercised")
    failures += len(unused)
    print(f"{len(CASES)} reports, {failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
