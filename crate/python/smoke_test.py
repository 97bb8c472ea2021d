"""Builds the extension module and checks a few known values.

Run from the repository root:  python3 python/smoke_test.py
"""

import os
import shutil
import subprocess
import sys
import tempfile

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def build():
    subprocess.run(
        ["cargo", "build", "--release", "-p", "pforge-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    lib = os.path.join(ROOT, "target", "release", "libpforge.so")
    out = tempfile.mkdtemp(prefix="pforge-py-")
    shutil.copy(lib, os.path.join(out, "pforge.so"))
    sys.path.insert(0, out)


def main():
    build()
    import pforge

    for n in range(2, 7):
        x = pforge.xi_e(n)
        assert x.in_i2(), x
        r = pforge.pf2(x)
        assert r["status"] == "exact" and r["value"] == n - 1, r
        assert len(r["witness"]) == n - 1

    zero = pforge.Element.from_key("3:")
    assert not zero and pforge.pf1(zero) == 0

    g = pforge.generic_forms(3)
    assert g["qp"].entries == ["1", "x1", "x2", "x3"]
    assert pforge.pf1(g["qp"].theta()) == 3
    assert pforge.pf2(pforge.generic_forms(4)["qp0"].theta())["value"] == 3

    q = pforge.generic_forms(5)["q0"]
    chain = [pforge.pf2(q.scaled(d).theta())["value"] for d in ["1", "x1", "x1*x2*x3"]]
    assert chain == [4, 3, 2], chain

    x = pforge.Element(3, ["000", "011", 0b101, "x1*x2"])
    assert x.key == "3:000,011,101,110", x.key
    assert pforge.Element.from_json(x.to_json()) == x
    assert hash(x) == hash(pforge.Element.from_key(x.key))
    assert x.pushforward(2, ["10", "01", "00"]).key == "2:00,01,10,11"

    bounded = pforge.pf2(pforge.xi_e(6), budget=1)
    assert bounded["status"] == "bounded" and bounded["value"] is None
    assert bounded["upper"] == pforge.pf2_upper(pforge.xi_e(6))
    assert len(pforge.greedy(pforge.xi_e(6))) == bounded["upper"]

    forms = pforge.enumerate_dim6(4, require_one=True)
    assert len(forms) == 168
    report = pforge.classify_dim6(forms[0])
    assert report["pf2"] == 3 and report["represents_one"] and not report["w4_vanishes"]
    assert report["le3_witness"] is not None
    assert pforge.le3_witness(pforge.generic_forms(5)["q0"]) is None

    f = pforge.Form(4, "<1, x2, x1*x2, x1*x3, x1*x4, x1*x3*x4>")
    assert f.discriminant() == "1" and f.is_anisotropic()
    assert f.w4() == ["e1^e2^e3^e4"], f.w4()

    try:
        pforge.pf2(pforge.Element.from_key("2:00,01"))
    except ValueError as e:
        assert "I^2" in str(e)
    else:
        raise AssertionError("expected ValueError")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
