"""Runs `obmstop solve` over representative problems and validates each report against the schema."""
import json
import subprocess
import sys

import jsonschema

exe, schema_path = sys.argv[1], sys.argv[2]
with open(schema_path) as f:
    schema = json.load(f)
validator = jsonschema.Draft202012Validator(schema)

cases = [
    ["--sigma1", "1", "--sigma2", "2", "--r", "1.5"],
    ["--sigma1", "1", "--sigma2", "2", "--r", "3"],
    ["--sigma1", "1", "--sigma2", "2", "--r", "4.5"],
    ["--sigma1", "1", "--sigma2", "1", "--r", "2"],
    ["--sigma1", "1", "--sigma2", "2", "--r", "0.2", "--reward", "linear"],
    ["--beta", "0.75", "--r", "1", "--reward", "linear-skew"],
    ["--beta", "0.75", "--r", "0.05", "--reward", "linear-skew"],
]
failed = 0
for args in cases:
    out = subprocess.run([exe, *args, "solve"], capture_output=True, text=True)
    if out.returncode != 0:
        print("FAIL", args, "exit", out.returncode, out.stderr.strip())
        failed += 1
        continue
    errors = sorted(validator.iter_errors(json.loads(out.stdout)), key=lambda e: list(e.path))
    for e in errors:
        print("FAIL", args, "/".join(map(str, e.path)), e.message)
    failed += bool(errors)
print(f"{len(cases) - failed}/{len(cases)} reports valid")
sys.exit(1 if failed else 0)
