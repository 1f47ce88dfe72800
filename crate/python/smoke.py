"""Smoke test for the pymgeseq extension.

Builds the cdylib with cargo, copies it next to this script as an importable
module and exercises the main entry points.
"""

import importlib
import shutil
import subprocess
import sys
import sysconfig
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
HERE = Path(__file__).resolve().parent

LOOP = "monoid trop\nalphabet a\nstart 0 0\nfinal 0 0\ntrans 0 a 1 0\n"
UNROLLED = """monoid trop
alphabet a
start 0 0
final 0 0
final 1 0
trans 0 a 1 1
trans 1 a 1 0
"""


def build():
    subprocess.run(["cargo", "build", "--release", "-p", "mgeseq-py"], cwd=ROOT, check=True)
    built = ROOT / "target" / "release" / "libpymgeseq.so"
    dest = HERE / ("pymgeseq" + sysconfig.get_config_var("EXT_SUFFIX"))
    shutil.copy(built, dest)
    sys.path.insert(0, str(HERE))
    return importlib.import_module("pymgeseq")


def main():
    m = build()

    trop = m.Monoid("trop")
    one, three = trop.element("1"), trop.element("3")
    assert str(one * three) == "4"
    assert one.le(three) and not three.le(one)
    assert str(three.quotient(one)) == "2"
    assert [str(x) for x in m.mge([one, three])] == ["2", "0"]

    free = m.Monoid("free:ab")
    assert free.element("ab").join(free.element("ba")) is None
    assert str(free.element("ab").meet(free.element("aa"))) == "a"

    t = m.Transducer.parse(UNROLLED)
    assert str(t.eval("aaa")) == "3"
    small = t.minimize()
    assert small.num_states == 1
    assert small.to_text() == LOOP
    assert small.equivalent(t)
    other = m.Transducer.parse(LOOP.replace("a 1 0", "a 2 0"))
    assert small.difference(other) == "DIFF a 1 2"
    u, v = small.witness("_", "a")
    assert (str(u), str(v)) == ("0", "1")

    learned = m.learn(t, 1, 6)
    assert learned.to_text() == LOOP
    table = "monoid free:xy\nalphabet a\nmap _ xy\n"
    assert m.learn(table, 2, 4).num_states == 2

    reports = m.axioms("trop", 200, 7)
    assert len(reports) == 11 and all(ok for _, ok, _ in reports)

    try:
        m.Monoid("nope")
    except ValueError:
        pass
    else:
        raise AssertionError("bad descriptor accepted")

    print("pymgeseq smoke test passed")


if __name__ == "__main__":
    main()
