"""The built-in catalog, its JSON form, and the command-line interface."""

import io
import json

from cyode import families
from cyode.cli import main

for e in families.catalog():
    print(f"{e.name:28s} order {e.order}  beta = {e.expected.get('beta') if e.expected else None}")

text = families.dumps([families.get("legendre")])
print("\nlegendre as JSON:\n" + text)
assert families.loads(text) == [families.get("legendre")]

# the CLI is importable; `cyode ...` on the shell runs the same function
out = io.StringIO()
main(["modp", "hasse", "legendre", "-p", "5", "--json"], stdout=out)
print(json.dumps(json.loads(out.getvalue()), indent=2))
