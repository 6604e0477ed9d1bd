"""
The hs command on the bundled problem files
===========================================

Each call prints a JSON report; the exit code says how it went
(0 ok, 2 verification failed, 3 budget exhausted, 4 bad input).
"""

import json
import subprocess
import sys
from pathlib import Path

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


def hs(*args):
    proc = subprocess.run([sys.executable, "-m", "hsint.cli", *args], capture_output=True, text=True)
    return proc.returncode, json.loads(proc.stdout)


code, rep = hs("integrate", str(PROBLEMS / "cusp_char2.json"), "--max-order", "6", "--method", "ci")
print("integrate:", code, rep["results"]["method"], len(rep["transcript"]), "checks")

code, rep = hs("leaps", str(PROBLEMS / "x3_f3.json"), "--max-order", "9")
print("leaps:", code, rep["results"]["leaps"])

code, rep = hs("check-hs", str(PROBLEMS / "bad_hs_f2.json"))
print("check-hs on a bad table:", code, rep["reason"])

# the same file twice gives the same bytes, unless --timing is asked for
a = subprocess.run([sys.executable, "-m", "hsint.cli", "fitting", str(PROBLEMS / "cusp_char2.json"), "--ell", "1"],
                   capture_output=True).stdout
b = subprocess.run([sys.executable, "-m", "hsint.cli", "fitting", str(PROBLEMS / "cusp_char2.json"), "--ell", "1"],
                   capture_output=True).stdout
print("reproducible:", a == b)
