"""
Checking witness cycles and writing certificates
==============================================

Parse cycles written in compact arrow notation, verify them, and emit the
JSON documents the command line tool produces.
"""

import json

from rainbow_spectra.cli import run
from rainbow_spectra.search import COMPACT_K22, div4_family, parse_compact, verify_cycle

# The k = 22 witness in compact form: "a ->m b" is one edge, "a ->^t m b" t edges
steps = parse_compact(COMPACT_K22, 254)
cert = verify_cycle(254, steps, 88, div4_family(22))
print("k=22 valid:", cert.valid, "with", len(steps), "edges")

# Changing one short edge breaks the step multiset, and the certificate says so
i = steps.index(1)
bad = verify_cycle(254, steps[:i] + [2] + steps[i + 1:], 88, div4_family(22))
print("perturbed valid:", bad.valid, "-", bad.detail)

# The same check through the command line front end, as JSON
run(["--json", "verify", "--case", "div4", "--k", "22", "--compact", COMPACT_K22])

# A stated vertex that disagrees with the running position is a parse error
code = run(["verify", "--case", "div4", "--k", "22", "--compact", "0 →1 1 →1 3"])
print("exit code:", code)
print(json.dumps(cert.to_dict()["constraint_family"]))
