#!/usr/bin/env python3
"""Smoke test for the avgdepth_py extension module.

Build the extension first:

    cargo build -p avgdepth-py --release   (or without --release)

then run this script from the repository root:

    python3 python/smoke_test.py
"""

import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        ROOT / "target" / "release" / "libavgdepth_py.so",
        ROOT / "target" / "debug" / "libavgdepth_py.so",
        ROOT / "target" / "release" / "libavgdepth_py.dylib",
        ROOT / "target" / "debug" / "libavgdepth_py.dylib",
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("build the extension first: cargo build -p avgdepth-py")
    stage = pathlib.Path(tempfile.mkdtemp(prefix="avgdepth_py_"))
    shutil.copy(built, stage / "avgdepth_py.so")
    sys.path.insert(0, str(stage))
    import avgdepth_py

    return avgdepth_py


def main():
    aq = load_module()

    # Exact values on the classic families.
    xor6 = aq.TruthTable.named("xor", 6)
    assert xor6.weight() == 32
    num, den = aq.dave_exact(xor6)
    assert num == 6 * den, (num, den)
    assert aq.worst_depth(xor6) == 6
    assert aq.min_certificate(xor6) == 6

    and3 = aq.TruthTable.named("and", 3)
    assert aq.certificate_complexity(and3, 0b111) == 3
    assert aq.certificate_complexity(and3, 0b110) == 1
    assert aq.min_certificate(and3) == 1

    point = aq.TruthTable.point(5, 19)
    num, den = aq.dave_exact(point)
    assert num == 2 * den - 2, "unique-black-point closed form"

    pso2 = aq.TruthTable.pso(2)
    num, den = aq.dave_exact(pso2)
    assert (num, den) == (104, 32), (num, den)
    assert aq.worst_depth(pso2) == 5

    # Restriction algebra and composition.
    xor3 = aq.TruthTable.named("xor", 3)
    sub = xor3.restrict([(1, False)])
    assert sub.n == 2 and sub.weight() == 2
    xor2 = aq.TruthTable.named("xor", 2)
    assert xor2.compose(xor2).to_text() == aq.TruthTable.named("xor", 4).to_text()

    # Coordinate classes of a sparse function.
    classes = aq.ecs_classes(aq.TruthTable.sample(12, 2, 7))
    assert sum(len(members) for members, _ in classes) == 12

    # Strategy measurement: exact and Monte Carlo.
    and2 = aq.TruthTable.named("and", 2)
    mean, max_cost = aq.strategy_cost(and2, "naive")
    assert mean == 1.5 and max_cost == 2
    f = aq.TruthTable.sample(12, 2, 99)
    mean, _ = aq.strategy_cost(f, "ecs")
    assert mean <= 5.0
    mean_mc, _ = aq.strategy_cost(f, "naive", trials=2000, seed=1)
    assert 0.0 <= mean_mc <= 12.0

    # Sampling and parity checks.
    t1 = aq.TruthTable.sample(10, 77, 5)
    t2 = aq.TruthTable.sample(10, 77, 5)
    assert t1.to_text() == t2.to_text(), "seeded sampling is deterministic"
    trace = aq.box_process(30, 2**20, [(1, True), (2, False), (3, True)], 11)
    assert len(trace) == 4 and trace[0] == 2**20
    assert aq.is_t_delta_parity(aq.TruthTable.named("xor", 6), 5, 0, 1)

    # Criticality machinery.
    lam = aq.lambda_estimate(aq.TruthTable.named("xor", 10))
    assert 9.5 <= lam <= 10.5, lam
    tail = aq.restriction_tail(and2, 1, 2)
    assert abs(tail[1] - 0.5) < 1e-12 and abs(tail[2] - 0.25) < 1e-12
    assert abs(aq.restriction_cost_bound(16, 4.0) - 16.0) < 1e-12

    # DNF round trip.
    dnf = aq.Dnf.parse("n=3\nx1 x2 | !x1 x3")
    assert dnf.width() == 2 and dnf.size() == 2
    assert aq.Dnf.parse(dnf.print()).print() == dnf.print()
    table = dnf.to_table()
    assert table.value(0b011) and not table.value(0b001)

    # A full experiment report through the bindings.
    report = json.loads(aq.run_experiment("pso-table"))
    assert report["schema"] == 1
    assert report["verdict"] == "pass"

    print("smoke test passed")


if __name__ == "__main__":
    main()
