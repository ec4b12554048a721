"""Validates golden outputs and job files against docs/schema.json."""

import json
import pathlib
import sys

import jsonschema

ROOT = pathlib.Path(__file__).resolve().parents[2]
GOLDEN = ROOT / "tests" / "golden"


def definition(args, code):
    if code != 0:
        return "error"
    if args[0] == "run":
        job = json.loads((GOLDEN / args[2]).read_text())
        return definition_for_job(job)
    cmd = args[0]
    if cmd == "relative":
        return "relative_" + args[1]
    if cmd == "polygon":
        return "polygon_" + args[1]
    return cmd.replace("-", "_")


def definition_for_job(job):
    cmd = job["command"]
    inp = job.get("input", {})
    if cmd == "relative":
        return "relative_" + inp["instance"]
    if cmd == "polygon":
        return "polygon_" + inp["action"]
    return cmd.replace("-", "_")


def main():
    schema = json.loads((ROOT / "docs" / "schema.json").read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    failures = 0

    def check(doc, name, label):
        nonlocal failures
        sub = {"$ref": f"#/$defs/{name}", "$defs": schema["$defs"]}
        for validator in (jsonschema.Draft202012Validator(sub), jsonschema.Draft202012Validator(schema)):
            errors = list(validator.iter_errors(doc))
            if errors:
                failures += 1
                print(f"FAIL {label}: {errors[0].message}")
                return
        print(f"ok   {label} ({name})")

    for case in json.loads((GOLDEN / "cases.json").read_text()):
        if case.get("svg") or case.get("exit", 0) == 1:
            continue
        doc = json.loads((GOLDEN / "expected" / f"{case['name']}.json").read_text())
        check(doc, definition(case["args"], case.get("exit", 0)), case["name"])

    for path in sorted((GOLDEN / "jobs").glob("*.json")):
        job = json.loads(path.read_text())
        if path.name == "unknown_field.json":
            if not list(jsonschema.Draft202012Validator(schema["$defs"]["job"] | {"$defs": schema["$defs"]}).iter_errors(job)):
                failures += 1
                print("FAIL unknown_field.json accepted by the job schema")
            else:
                print("ok   unknown_field.json rejected")
            continue
        check(job, "job", path.name)

    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
