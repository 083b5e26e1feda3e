"""Python smoke tests for the latpol extension module."""

import json
import sys

from latpol import _core


def check(cond, what):
    if not cond:
        print(f"FAIL: {what}")
        sys.exit(1)
    print(f"ok: {what}")


def main():
    e8 = _core.make_standard("E8")
    check(e8.rank == 8, "E8 has rank 8")

    rep = _core.classify(e8)
    check(rep["is_even"] and rep["is_unimodular"] and rep["det"] == "1",
          "E8 classifies even unimodular with det 1")

    roots = _core.enumerate_short(e8, "2")
    check(roots["exhaustive"] and roots["counts_by_norm"].get("2") == 240,
          "E8 has 240 roots")

    mu, certified = _core.min_norm(e8)
    check(mu == "2" and certified, "E8 minimum norm 2 certified")

    leech = _core.make_standard("Leech_turyn")
    check(_core.enumerate_short(leech, "2")["counts_by_norm"] == {},
          "Turyn Leech is rootless")

    ident = _core.identify_root_system(_core.make_standard("E8_cubed"))
    check(ident["total_roots"] == 720 and len(ident["components"]) == 3,
          "E8^3 identifies as three E8 components")

    pair = _core.standard_pair("E8")
    check(pair.even_polarization, "E8 pair is an even polarization")
    check(pair.verify()["ok"], "E8 pair verifies")

    lmn = _core.build_lmn(pair, 3, "leech24")
    b = lmn.bounds()
    check(b["lower"] == "3" and b["upper"] == "4" and not b["tainted"],
          "L(M,N,3) bounds are (3, 4)")
    check(lmn.report()["rank"] == 24 and lmn.report()["is_even"],
          "L(M,N,3) is even of rank 24")

    # JSON round trip through the file format
    round_tripped = _core.Lattice.from_json(e8.to_json())
    check(round_tripped.rank == 8, "lattice JSON round trip")

    verdict = json.loads(_core.offender_search_sampled(lmn, 5, 3))
    check(verdict["status"] == "norm6_found",
          "offender search finds a norm-6 vector in the rank-24 model")

    # the policy cap surfaces as a dedicated exception
    z40 = _core.Lattice.from_json(json.dumps({
        "label": "Z40",
        "ambient_dim": 40,
        "ambient_gram": [["1" if i == j else "0" for j in range(40)] for i in range(40)],
        "basis": [["1" if i == j else "0" for j in range(40)] for i in range(40)],
    }))
    try:
        _core.enumerate_short(z40, "1")
        check(False, "rank policy should refuse rank 40")
    except _core.PolicyRefusal:
        check(True, "rank policy refusal raises PolicyRefusal")

    print("all smoke tests passed")


if __name__ == "__main__":
    main()
