#!/usr/bin/env python3
"""Smoke test for the k3twist_py extension module.

Builds nothing itself: it locates the compiled cdylib under target/ (release
preferred), exposes it on a temp path as an importable module, and exercises
the main entry points. Run after `cargo build -p k3twist-py [--release]`:

    python3 python/smoke_test.py
"""

import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def locate_cdylib() -> pathlib.Path:
    candidates = [
        ROOT / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("libk3twist_py.so", "k3twist_py.so", "libk3twist_py.dylib")
    ]
    for c in candidates:
        if c.exists():
            return c
    sys.exit("k3twist_py cdylib not found; run `cargo build -p k3twist-py` first")


def import_module():
    lib = locate_cdylib()
    tmp = tempfile.mkdtemp(prefix="k3twist-py-")
    shutil.copy(lib, pathlib.Path(tmp) / "k3twist_py.so")
    sys.path.insert(0, tmp)
    import k3twist_py

    return k3twist_py


def main() -> None:
    m = import_module()
    checks = 0

    def check(name, cond):
        nonlocal checks
        checks += 1
        if not cond:
            sys.exit(f"FAIL: {name}")
        print(f"ok: {name}")

    # lattice invariants of the standard lattices
    k3 = m.Lattice.k3()
    inv = k3.invariants()
    check("K3 lattice signature", inv["signature"] == (3, 19))
    check("K3 lattice determinant", inv["det"] == -1)
    mukai = m.Lattice.mukai()
    check("Mukai lattice rank/sig", mukai.invariants()["signature"] == (4, 20))
    check("-E8 is even of det 1", m.Lattice.minus_e8().invariants()["det"] == 1)

    # exact linear algebra
    h, u = m.hnf([[3], [5]])
    check("hnf gcd column", h == [[1], [0]])
    factors, _, _ = m.snf([[2, 0], [0, 3]])
    check("snf divisor chain", factors == [1, 6])
    check("integer kernel", m.integer_kernel([[2, -4]]) == [[2, 1]])
    check("solve integer", m.solve_integer([[1, 0], [0, 5]], [7, 10]) == [7, 2])
    check("signature", m.signature([[0, 1], [1, 0]]) == (1, 1, 0))

    # the two counterexample forms and their separation
    pic_b = [[0, -5], [-5, 2]]
    pic_2b = [[0, -5], [-5, 8]]
    check("self isometry found", m.isometry_search(pic_b, pic_b, 25) is not None)
    check("forms not matched in box", m.isometry_search(pic_b, pic_2b, 25) is None)
    check("2 represented by the first form", m.represents_binary_exact(5, 1, 2) == (0, 1))
    check("2 provably absent in the second", m.represents_binary_exact(5, 4, 2) is None)
    check("bounded search agrees", m.represents_bounded(pic_2b, 2, 50) is None)

    # Mukai structures: v(O) = (1, 0, ..., 0, 1)
    v_o = ["1"] + ["0"] * 22 + ["1"]
    v_pt = ["0"] * 23 + ["1"]
    check("pairing of v(O) with itself", m.mukai_pairing(v_o, v_o) == "-2/1")
    check("Euler pairing chi(O,O)", m.euler_pairing(v_o, v_o) == "2/1")
    check("Euler pairing chi(O,k(x))", m.euler_pairing(v_o, v_pt) == "1/1")

    # exp(B) with B = e1: image of v(O) gains the degree-2 part
    b_e1 = ["1"] + ["0"] * 21
    image = m.exp_b(b_e1, v_o)
    check("exp_b degree-2 transport", image[1] == "1/1" and image[0] == "1/1")

    # order-five class and its twisted Picard form
    b5 = ["1/5", "1/5"]
    check("Brauer order five", m.brauer_order(b5) == 5)
    gram = m.twisted_picard_gram(b5)
    check(
        "twisted Picard form matches",
        m.isometry_search(gram, pic_b, 25) is not None,
    )

    # matching a random word to a twisted period
    r = m.match_twist_random(1, 6)
    check("match certificate holds", r["certificate_holds"])

    # report pipelines
    counter = json.loads(m.verify_counterexample(500))
    check("counterexample pipeline passes", counter["passed"])
    family = json.loads(m.fm_partner_family(3))
    check("partner family passes", family["passed"])
    check(
        "partner discs distinct",
        family["discs_pairwise_distinct"]
        and [mem["abs_disc"] for mem in family["members"]] == ["256", "1296", "10000"],
    )

    print(f"\nsmoke test passed: {checks} checks")


if __name__ == "__main__":
    main()
