"""Smoke test for the `evalbirep` extension module.

Builds the cdylib if needed, loads it from a temporary directory and runs a
few calls. Usage: python3 python/smoke_test.py [--release]
"""

import json
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    profile = "release" if "--release" in sys.argv else "debug"
    cmd = ["cargo", "build", "--offline", "-p", "evalbirep-py"]
    if profile == "release":
        cmd.append("--release")
    subprocess.run(cmd, cwd=ROOT, check=True)
    lib = ROOT / "target" / profile / "libevalbirep_py.so"
    tmp = Path(tempfile.mkdtemp())
    shutil.copy(lib, tmp / "evalbirep.abi3.so")
    sys.path.insert(0, str(tmp))
    import evalbirep

    return evalbirep


def main():
    eb = load()

    t = eb.Hecke(3, "T1")
    assert t * t == eb.Hecke(3, "1 + (q^-1 - q)*T1")
    assert eb.Hecke(3, "T0").ev("1") == eb.Hecke(3, "T0").ev("q^2")
    assert eb.Hecke(3, "y1").ev("-q") == eb.Hecke(3, "-q")
    assert json.loads(t.to_json())["d"] == 3

    z = eb.Zigzag(4)
    assert z.dim == 16
    assert z.mul("p0|1", "p1|0") == "1*l0"
    assert z.trace_form_rank() == 16
    assert eb.Zigzag(4, affine=False).dim == 10

    assert len(eb.CellModule(4, "(-q)^4").radical()) == 1
    assert eb.CellModule(4, "q").radical() == []
    assert eb.normalize_scalar("q - q") == "0"

    text, decat, parts = eb.minimal_model(3, "rho", x=0)
    assert parts == ["X1<3>[-1]"], (text, parts)
    assert decat

    ok, report = eb.verify("decat", 3)
    assert ok
    assert json.loads(report)["schema"] == 1
    assert report == eb.verify("decat", 3)[1]
    assert "end-algebra" in eb.suites()

    try:
        eb.Hecke(3, "T1 * ?")
    except ValueError as e:
        assert "position" in str(e)
    else:
        raise AssertionError("parse error expected")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
