#!/usr/bin/env python3
"""Validate JSON files against the schemas in schemas/.

usage: validate_json.py SCHEMA FILE...   (SCHEMA is e.g. report, group)
"""

import json
import pathlib
import sys

import jsonschema
from referencing import Registry, Resource

SCHEMA_DIR = pathlib.Path(__file__).resolve().parent.parent / "schemas"


def registry():
    resources = []
    for path in SCHEMA_DIR.glob("*.schema.json"):
        resources.append((path.name, Resource.from_contents(json.loads(path.read_text()))))
    return Registry().with_resources(resources)


def main(argv):
    if len(argv) < 3:
        print(__doc__.strip(), file=sys.stderr)
        return 2
    schema = json.loads((SCHEMA_DIR / f"{argv[1]}.schema.json").read_text())
    validator = jsonschema.Draft202012Validator(schema, registry=registry())
    failed = 0
    for name in argv[2:]:
        errors = sorted(validator.iter_errors(json.loads(pathlib.Path(name).read_text())),
                        key=lambda e: list(e.path))
        for e in errors:
            print(f"{name}: {'/'.join(map(str, e.path)) or '<root>'}: {e.message}")
        failed += bool(errors)
    print(f"{len(argv) - 2 - failed}/{len(argv) - 2} valid")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
