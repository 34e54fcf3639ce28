"""Drive the command-line front end from Python and read its reports.

Each command returns an exit status (0 ok, 2 negative analysis result,
1 error) and a JSON envelope carrying seed, tolerance and arguments.
"""
import json
import tempfile
from pathlib import Path

from noiseless.cli import run_command

tmp = Path(tempfile.mkdtemp())
status, env = run_command(["collective", "--n", "4", "--out", str(tmp / "c.json")])
print("exit", status)
print(json.dumps({k: env[k] for k in ("schema", "schema_version", "command", "seed", "tol")}))

status, env = run_command(["stabilizer", "--gens", "ZZI,IZZ", "--errors", "III,XXX"])
print("exit", status, "(an undetectable pair is a negative result)")
