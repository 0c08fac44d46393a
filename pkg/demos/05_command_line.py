# # The steinitz-ip command
#
# Instances are JSON files with keys m, n, A, b, c and optionally u. Results
# print integers as strings so nothing large is rounded.

import json
import os
import subprocess
import sys
import tempfile

def cli(*args):
    proc = subprocess.run([sys.executable, "-m", "steinitz_ip", *args],
                          capture_output=True, text=True)
    return proc.returncode, proc.stdout.strip()

# gen draws a feasible instance from a seeded SplitMix64 stream. The same seed
# gives the same bytes on every platform.

code, text = cli("gen", "--m", "2", "--n", "4", "--delta", "2", "--seed", "11")
print(text)

with tempfile.TemporaryDirectory() as tmp:
    path = os.path.join(tmp, "inst.json")
    with open(path, "w") as fh:
        fh.write(text)
    for cmd in (["solve", path], ["feasible", path], ["bounds", path], ["oracle", path]):
        code, text = cli(*cmd)
        print("$ steinitz-ip", cmd[0], "->", code, text)

    vec = os.path.join(tmp, "vectors.json")
    with open(vec, "w") as fh:
        json.dump([[2, -1], [-1, 2], [-1, -1], [1, 0], [-1, 0]], fh)
    print("$ steinitz-ip steinitz ->", *cli("steinitz", vec))

# Exit codes: 0 optimal or feasible, 1 infeasible, 2 unbounded, 3 bad input,
# 4 an algorithm that does not apply to the instance.
