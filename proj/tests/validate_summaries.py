"""Validate every summary.json under a directory against the schema."""

import json
import pathlib
import sys

import jsonschema


def main() -> int:
    schema = json.loads(pathlib.Path(sys.argv[1]).read_text())
    root = pathlib.Path(sys.argv[2])
    files = sorted(root.rglob("summary.json"))
    if not files:
        print(f"no summary.json under {root}")
        return 1
    validator = jsonschema.Draft202012Validator(schema)
    bad = 0
    for f in files:
        errors = list(validator.iter_errors(json.loads(f.read_text())))
        for e in errors:
            print(f"{f}: {'/'.join(map(str, e.path))}: {e.message}")
        bad += bool(errors)
    print(f"{len(files) - bad}/{len(files)} summaries valid")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
