"""Smoke test for the strong_skolem extension module.

Build and install first:  maturin develop -m crates/py/Cargo.toml
"""

import strong_skolem as sk


def main():
    assert sk.is_prime(43) and not sk.is_prime(45)
    assert sk.legendre_class(2, 11) == "NQR"
    assert sk.mod_inverse(2, 11) == 6
    residues, non_residues, gen = sk.qr_table(11)
    assert residues == [1, 3, 4, 5, 9] and gen == 3
    assert len(non_residues) == 5

    s = sk.build_strong_skolem(11, "2")
    assert s.modulus == 11 and len(s) == 5
    report = sk.full_report(s)
    assert report.is_starter and report.is_strong and report.is_skolem
    assert [b - a for a, b in report.skolem_ordering] == [1, 2, 3, 4, 5]

    again = sk.PairSet.parse(s.to_json())
    assert again == s and sk.PairSet.parse(s.to_text()) == s

    holds, entries = sk.half_set_certificate(s)
    assert holds and len(entries) == 5

    bad = sk.PairSet(11, [(1, 2), (3, 4), (5, 6), (7, 8), (9, 10)])
    ok, witnesses = sk.verify_starter(bad)
    assert not ok and witnesses

    try:
        sk.build_strong_skolem(13, "2")
    except ValueError as e:
        assert "inapplicable" in str(e)
    else:
        raise AssertionError("q = 13 should be rejected")

    r = sk.search(19, strong=True, mode="count", parallel=True)
    assert r.count == 194, r
    r = sk.search(11, mode="enumerate")
    assert r.count == 2 and len(r.witnesses) == 2

    rows = sk.enumerate_theorem_starters(43)
    assert [q for q, *_ in rows] == [11, 11, 19, 19, 43, 43]
    assert sk.cross_validate(19) == [(11, 2), (19, 194)]
    print("strong_skolem smoke test: ok")


if __name__ == "__main__":
    main()
