#!/usr/bin/env python3
"""Run the CLI on every fixture and validate requests and reports against the schemas.

usage: schema_roundtrip.py <normconc executable> <schemas dir> <fixtures dir>
"""
import json
import math
import pathlib
import subprocess
import sys

import jsonschema


def load(path):
    with open(path) as f:
        return json.load(f)


def validator(path):
    schema = load(path)
    jsonschema.Draft202012Validator.check_schema(schema)
    return jsonschema.Draft202012Validator(schema)


def run(cli, command, fixture, request):
    if command == "compare":
        args = [cli, "compare", "--example", request["example"], "--theta", repr(request["theta"]),
                "--n-max", str(request["n_max"]), "-o", request.get("output", "csv")]
        if "n_min" in request:
            args += ["--n-min", str(request["n_min"])]
        return subprocess.run(args, capture_output=True, text=True)
    return subprocess.run([cli, command, "-i", str(fixture)], capture_output=True, text=True)


def main():
    cli, schemas, fixtures = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    requests = validator(schemas / "request.schema.json")
    reports = validator(schemas / "report.schema.json")
    failures = []
    checked = 0

    def expect(cond, what):
        if not cond:
            failures.append(what)

    for fixture in sorted(fixtures.glob("*.json")):
        name = fixture.stem
        request = load(fixture)
        if name.startswith("bad_"):
            expect(not requests.is_valid(request), f"{name}: schema accepted a bad request")
            proc = run(cli, "bound", fixture, request)
            expect(proc.returncode == 2, f"{name}: exit {proc.returncode}, expected 2")
            expect(proc.stdout == "", f"{name}: wrote to stdout on error")
            checked += 1
            continue
        command = name.split("_", 1)[0]
        errors = [e.message for e in requests.iter_errors(request)]
        expect(not errors, f"{name}: request invalid: {errors[:1]}")
        proc = run(cli, command, fixture, request)
        expect(proc.returncode == 0, f"{name}: exit {proc.returncode}: {proc.stderr.strip()}")
        if proc.returncode != 0:
            continue
        report = json.loads(proc.stdout)
        errors = [e.message for e in reports.iter_errors(report)]
        expect(not errors, f"{name}: report invalid: {errors[:1]}")
        checked += 1

        if name == "allocate_small":
            expect(report["allocation"] == [10, 20], f"{name}: allocation {report['allocation']}")
        if name == "bound_mean_inside":
            expect(report["value"] == 1.0, f"{name}: value {report['value']}")
        if name == "bound_gaussian_ball":
            expect(abs(report["value"] - math.exp(-2.0)) < 1e-9, f"{name}: value {report['value']}")
        if name == "sharpness_ball":
            expect(report["verdict"] == "plausibly-sharp", f"{name}: verdict {report['verdict']}")

    # Reports must not validate if a required field is dropped.
    probe = json.loads(run(cli, "bound", fixtures / "bound_gaussian_ball.json", {}).stdout)
    del probe["witness"]
    expect(not reports.is_valid(probe), "report schema accepted a bound without a witness field")

    for f in failures:
        print("FAIL", f)
    print(f"{checked} fixtures checked, {len(failures)} failures")
    return 1 if failures or checked == 0 else 0


if __name__ == "__main__":
    sys.exit(main())
