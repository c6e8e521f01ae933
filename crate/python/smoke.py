"""Smoke test for the Python extension.

Build it first with
    cargo build -p almostline-py --features extension-module
then run
    python3 python/smoke.py [path/to/libalmostline_py.so]
"""
import importlib.util
import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "crates" / "almostline" / "tests" / "fixtures"


def load(lib):
    tmp = pathlib.Path(tempfile.mkdtemp())
    target = tmp / "almostline_py.so"
    shutil.copy(lib, target)
    spec = importlib.util.spec_from_file_location("almostline_py", target)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main():
    lib = sys.argv[1] if len(sys.argv) > 1 else ROOT / "target" / "debug" / "libalmostline_py.so"
    al = load(lib)
    fig1a = (FIXTURES / "fig1a.json").read_text()
    fig1c = (FIXTURES / "fig1c.json").read_text()

    assert al.schema_version() == "1"
    assert al.validate(fig1a) == []
    assert al.test(fig1a) == "DRAWABLE"
    assert al.test(fig1c) == "NOT-DRAWABLE v"

    d = al.draw(fig1a)
    ok, report = al.verify(fig1a, d)
    assert ok, report
    assert "<svg" in al.svg(fig1a, d)
    assert al.log2_area(fig1a, d) > 0

    g = al.gen_random(20, seed=3, consistent=True)
    ok, report = al.verify(g, al.draw(g))
    assert ok, report

    dump = json.loads(al.split((FIXTURES / "fig9.json").read_text()))
    assert ",".join(dump["walk"]) == "s,e,d,c,b,a,t,g,h,i,h,j,k"

    try:
        al.draw(fig1c)
    except ValueError:
        pass
    else:
        raise AssertionError("inconsistent graph was drawn")
    print("python smoke: ok")


if __name__ == "__main__":
    main()
