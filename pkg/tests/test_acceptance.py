"""Acceptance gate.

Each numbered check prints a single PASS/FAIL verdict line directly to the
terminal (bypassing capture) and then asserts. Tolerances are part of the
contract and must not be loosened to make a check pass.
"""

import json
import math

import numpy as np
import pytest

from bunchent import (
    BunchPartition,
    bell_w_state,
    build_projector,
    bunch_reduce,
    compress_operator,
    densify,
    diagnose_density,
    entanglement_molecule,
    enumerate_partitions,
    enumerate_patterns,
    eof,
    eof_bunches,
    ghz,
    partial_trace,
    tripartite_triple,
)
from bunchent.cli import main
from helpers import random_mixed, random_partition, random_pure, tripartite_oracle


def _verdict(capsys, num: int, ok: bool, detail: str) -> None:
    with capsys.disabled():
        print(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="module")
def ghz_densities():
    return {n: densify(ghz(n)) for n in range(3, 9)}


def test_criterion_1_ghz_all_or_nothing(ghz_densities, capsys):
    worst_full = 0.0
    worst_partial = 0.0
    for n, rho in ghz_densities.items():
        for part in enumerate_partitions(n):
            rep = eof_bunches(rho, part)
            if part.m + part.n == n:
                worst_full = max(worst_full, abs(rep.eof - 1.0))
            else:
                worst_partial = max(worst_partial, rep.concurrence, rep.eof)
    ok = worst_full < 1e-9 and worst_partial < 1e-9
    _verdict(
        capsys, 1, ok,
        f"ghz N=3..8: full covers |eof-1| max {worst_full:.2e}, "
        f"partial covers max {worst_partial:.2e} (tol 1e-9)",
    )
    assert ok


def test_criterion_2_ghz_pairs_disentangled(ghz_densities, capsys):
    worst = 0.0
    for n, rho in ghz_densities.items():
        for part in enumerate_partitions(n, max_bunch=1):
            worst = max(worst, eof_bunches(rho, part).concurrence)
    ok = worst < 1e-12
    _verdict(capsys, 2, ok, f"ghz singleton pairs: concurrence max {worst:.2e} (tol 1e-12)")
    assert ok


def test_criterion_3_two_branch_states(capsys):
    worst_partial = 0.0
    worst_full = 0.0
    for n in range(3, 7):
        for w in range(1, n):
            rho = densify(bell_w_state(n, w))
            for part in enumerate_partitions(n):
                rep = eof_bunches(rho, part)
                if part.m + part.n == n:
                    worst_full = max(worst_full, abs(rep.eof - 1.0))
                else:
                    worst_partial = max(worst_partial, rep.eof)
    ok = worst_partial < 1e-9 and worst_full < 1e-9
    _verdict(
        capsys, 3, ok,
        f"two-branch N=3..6 all w: partial eof max {worst_partial:.2e}, "
        f"full covers |eof-1| max {worst_full:.2e} (tol 1e-9)",
    )
    assert ok


def test_criterion_4_molecule_mixture(capsys):
    subsets = [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]
    rho = entanglement_molecule(4, 3, 1, {s: 0.25 for s in subsets})
    best_full = 0.0
    worst_partial = 0.0
    for part in enumerate_partitions(4):
        rep = eof_bunches(rho, part)
        if part.m + part.n == 4:
            best_full = max(best_full, rep.eof)
        else:
            worst_partial = max(worst_partial, rep.eof)
    ok = best_full > 1e-6 and worst_partial < 1e-9
    _verdict(
        capsys, 4, ok,
        f"uniform 3-of-4 molecule: best full-cover eof {best_full:.3e} "
        f"(needs > 1e-6), partial eof max {worst_partial:.3e} (tol 1e-9)",
    )
    assert ok


def test_criterion_5_pure_state_entropy_oracle(capsys):
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(1000):
        rho = densify(random_pure(rng, 2))
        probs = np.linalg.eigvalsh(partial_trace(rho, [1]).entries)
        entropy = float(sum(-p * math.log2(p) for p in probs if p > 1e-15))
        worst = max(worst, abs(eof(rho).eof - entropy))
    ok = worst < 1e-8
    _verdict(capsys, 5, ok, f"1000 pure pairs: |eof - marginal entropy| max {worst:.2e} (tol 1e-8)")
    assert ok


def test_criterion_6_projector_route_equivalence(capsys):
    rng = np.random.default_rng(6)
    worst = 0.0
    for n in (3, 4):
        for _ in range(50):
            rho = random_mixed(rng, n)
            for part in enumerate_partitions(n):
                keep = sorted(part.labels)
                reduced = partial_trace(rho, keep).entries
                pos = {lab: t + 1 for t, lab in enumerate(keep)}
                local = BunchPartition(
                    tuple(pos[x] for x in part.bunch_a),
                    tuple(pos[x] for x in part.bunch_b),
                )
                red = bunch_reduce(rho, part)
                for pattern, comp in zip(enumerate_patterns(local), red.components):
                    proj = build_projector(local, pattern)
                    want = proj @ reduced @ proj.conj().T
                    got = compress_operator(reduced, local, pattern)
                    worst = max(worst, float(np.abs(got - want).max()))
                    assembled = (
                        comp.eta * comp.rho_pattern.entries
                        if comp.rho_pattern is not None
                        else np.zeros((4, 4))
                    )
                    worst = max(worst, float(np.abs(assembled - want).max()))
    ok = worst < 1e-13
    _verdict(capsys, 6, ok, f"bit-index vs projector blocks: entry diff max {worst:.2e} (tol 1e-13)")
    assert ok


def test_criterion_7_eta_normalization(capsys):
    rng = np.random.default_rng(7)
    worst_sum = 0.0
    worst_range = 0.0
    worst_defect = 0.0
    for _ in range(200):
        n = int(rng.integers(2, 6))
        rho = random_mixed(rng, n)
        part = random_partition(rng, n)
        red = bunch_reduce(rho, part)
        worst_sum = max(worst_sum, abs(sum(red.etas) - 1.0))
        worst_range = max(worst_range, *(max(-e, e - 1.0) for e in red.etas))
        diag = diagnose_density(red.rho_ab)
        worst_defect = max(
            worst_defect, diag.hermiticity_defect, diag.trace_defect, -diag.min_eigenvalue
        )
    ok = worst_sum < 1e-12 and worst_range <= 0.0 + 1e-12 and worst_defect < 1e-9
    _verdict(
        capsys, 7, ok,
        f"200 random reductions: |sum eta - 1| max {worst_sum:.2e} (tol 1e-12), "
        f"density defect max {worst_defect:.2e}",
    )
    assert ok


def test_criterion_8_tripartite_templates(capsys):
    rng = np.random.default_rng(8)
    worst = 0.0
    for _ in range(50):
        rho = random_mixed(rng, 3)
        triple = tripartite_triple(rho)
        for red, want in zip(triple, tripartite_oracle(rho.entries)):
            worst = max(worst, float(np.abs(red.rho_ab.entries - want).max()))
    ok = worst < 1e-14
    _verdict(capsys, 8, ok, f"50 tripartite triples vs index oracle: entry diff max {worst:.2e} (tol 1e-14)")
    assert ok


def test_criterion_9_cli_golden_run(tmp_path, capsys):
    ghz4 = tmp_path / "ghz4.json"
    ghz5 = tmp_path / "ghz5.json"
    checks = []

    checks.append(main(["build", "ghz", "--n", "4", "--out", str(ghz4)]) == 0)
    checks.append(main(["build", "ghz", "--n", "5", "--out", str(ghz5)]) == 0)
    capsys.readouterr()

    main(["eof", str(ghz4), "--a", "1", "--b", "2,3,4"])
    checks.append(capsys.readouterr().out == "concurrence 1.000000000000\neof 1.000000000000\n")

    main(["eof", str(ghz4), "--a", "1", "--b", "2,3"])
    checks.append(capsys.readouterr().out == "concurrence 0.000000000000\neof 0.000000000000\n")

    main(["survey", str(ghz5), "--full-cover"])
    first = capsys.readouterr().out
    rows = first.strip().split("\n")[1:]
    checks.append(len(rows) == 15)
    checks.append(all(row.split(",")[5] == "1" for row in rows))

    main(["survey", str(ghz5), "--full-cover"])
    checks.append(capsys.readouterr().out == first)
    main(["survey", str(ghz5), "--full-cover", "--jobs", "3"])
    checks.append(capsys.readouterr().out == first)

    ok = all(checks)
    _verdict(capsys, 9, ok, f"cli goldens and determinism: {sum(checks)}/{len(checks)} checks")
    assert ok
