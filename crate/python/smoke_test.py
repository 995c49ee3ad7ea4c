"""Build the extension with cargo, import it from a temp dir, and exercise it.

Usage: python3 python/smoke_test.py [--skip-build]
"""

import argparse
import importlib
import json
import shutil
import subprocess
import sys
import sysconfig
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build() -> Path:
    subprocess.run(
        ["cargo", "build", "--release", "-p", "fanocheck-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    lib = ROOT / "target" / "release" / "libfanocheck_py.so"
    if not lib.exists():
        sys.exit(f"expected {lib}")
    return lib


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--skip-build", action="store_true")
    args = ap.parse_args()
    lib = ROOT / "target" / "release" / "libfanocheck_py.so" if args.skip_build else build()

    with tempfile.TemporaryDirectory() as tmp:
        suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
        shutil.copy(lib, Path(tmp) / f"fanocheck_py{suffix}")
        sys.path.insert(0, tmp)
        fc = importlib.import_module("fanocheck_py")

        names = [n for n, _, _ in fc.list_scenarios()]
        assert "table1-invariants" in names and names == sorted(names), names

        report = json.loads(fc.run_scenario("t3aut-quadric-smooth"))
        assert report["scenario"] == "t3aut-quadric-smooth"
        assert all(c["status"] == "pass" for c in report["checks"]), report

        try:
            fc.run_scenario("no-such-scenario")
        except KeyError:
            pass
        else:
            raise AssertionError("unknown scenario accepted")

        rows = fc.verify_catalog()
        assert len(rows) == 9 and all(a == b for _, a, b in rows), rows
        assert len(json.loads(fc.catalog_json())) == 9

    print(f"ok: {len(names)} scenarios, catalog {[r[2] for r in rows]}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
