"""End-to-end smoke checks for the python bindings."""

import modelborel as mb


def test_classify():
    assert mb.classify("(forall x0 (exists x1 (R x0 x1)))") == "A2"
    assert mb.classify("(exists x0 (P x0))", "P/1") == "E1"


def test_prenex_roundtrip():
    out = mb.prenex("(not (forall x0 (P x0)))", "P/1")
    assert "exists" in out and "not" in out


def test_codec():
    bits = mb.encode("P/1", 3, [("P", [0]), ("P", [2])])
    assert bits == "101"
    desc = mb.decode("P/1", 3, bits)
    assert "P" in desc


def test_reduce():
    assert mb.reduce_bits("infcoinf", "101;0", 5) == "10100"
    assert mb.reduce_bits("pad", "11;0", 6) == "101000"
    out = mb.reduce_bits("matching", "0;0", 64)
    assert len(out) == 64
    assert set(out) <= {"0", "1"}


def test_member():
    assert mb.member("Sigma1", "1;0")
    assert not mb.member("Sigma1", ";0")
    assert mb.member("Pi2_infones", ";1")
    assert not mb.member("Pi2_infones", "111;0")


def test_simulate():
    clean, report, trace = mb.simulate("core1", "0;0", 100)
    assert clean, report
    assert "clean" in report
    assert trace


def test_eval_and_decide():
    assert mb.eval_on("(exists x0 (P x0))", "P/1", 2, [("P", [1])])
    assert mb.decide("monadic P=inf notP=inf",
                     "(exists x0 (exists x1 (and (P x0) (not (P x1)))))")


def test_battery_slice():
    ok, text = mb.battery(only=[9])
    assert ok, text
    assert "criterion 9 pass" in text


def main():
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"{name} ok")


if __name__ == "__main__":
    main()
