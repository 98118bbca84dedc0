"""Smoke test for the Python bindings.

Build first with `cargo build -p whitney-py --features extension-module`;
the script copies the shared library next to itself as `whitney.so`.
Pass a path to use a different build.
"""

import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load(path=None):
    if path is None:
        for profile in ("release", "debug"):
            cand = ROOT / "target" / profile / "libwhitney.so"
            if cand.exists():
                path = cand
                break
        else:
            sys.exit("libwhitney.so not found; run cargo build -p whitney-py first")
    tmp = pathlib.Path(tempfile.mkdtemp())
    shutil.copy(path, tmp / "whitney.so")
    sys.path.insert(0, str(tmp))
    import whitney

    return whitney


def main():
    w = load(sys.argv[1] if len(sys.argv) > 1 else None)

    k = w.Group("klein(a, f)")
    a, f = k.word("a"), k.word("f")
    assert str(f * a) == "a*f^-1"
    assert str((a * f**3).inverse()) == "a^-1*f^3"

    z = k.ring("f + f^3")
    tau = k.tree1("(f,f)+(f^-1,f)+(f^3,f^3)+(f^-3,f^3)")
    assert str(tau) == "(1,f) + (1,f^3) - (f,f^2) - (f^3,f^6)"
    assert str(w.int_null(z, f**3)) == "(1,f^3) + (f,f^3) - (f,f^4) - (f^3,f^6)"
    assert w.int_null(z, k.identity()).is_zero()

    res = w.member(tau, z, rmax=6, directions=[f])
    assert res == {"verdict": "no_witness", "rmax": 6}, res

    verdict, orbits = w.stabilizer(z, [a])
    assert verdict == "twisted" and orbits == [["f", "f^-1"], ["f^3", "f^-3"]]

    total, lat = w.compose([(tau, [a]), (tau, [a])])
    assert total.is_zero() and [str(x) for x in lat] == ["a^2"]
    assert (tau + tau.psi([a])).is_zero()

    p = w.Group("free_product(M1: free(g1, g2), M2: free(h0, h1, h2))")
    text, ring = w.sigma(w.Sphere.separating(p, ["M1"]), p.word("h0*g1*h1*g2*h2"))
    assert text == "(g1 - 1)*h1*g2*h2 + (g2 - 1)*h2"
    assert ring == p.ring("g1*h1*g2*h2 - h1*g2*h2 + g2*h2 - h2")

    c = w.Group("cyclic(x)")
    x = c.word("x")
    s = w.Sphere.nonseparating(c, "0").with_whisker(x**2)
    assert str(w.pairing(c.ring("x"), s)) == "-Y[1,1,2](1; x; x^3)"

    d = w.Group("direct_z(free(g, h), f)")
    rel = w.int_essential(d.word("h"), d.ring("g"), d.word("f"))
    assert rel == d.tree1("(1, f, g + g^-1 - f*g - f*g^-1)", coset=d.word("h"))

    assert str(k.parse("E[1,1](1)")) == "0"
    try:
        k.parse("")
    except ValueError as e:
        assert "syntax error" in str(e)
    else:
        raise AssertionError("empty input parsed")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
