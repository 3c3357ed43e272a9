"""Prints a one-line verdict per acceptance criterion after the test run."""

ACCEPTANCE = {
    "test_criterion_1_ring_axioms": (
        "1", "twisted ring axioms hold across 100+ randomized choice setups"
    ),
    "test_criterion_2_cocycle": (
        "2", "cocycle identity verified on 1000+ degree triples over 10+ setups"
    ),
    "test_criterion_3_graded_map": (
        "3", "degree map on rank-2 lex setups: bijective, additive, multiplicative,"
        " degree-true, invertible (500+ pairs, trivial and twisted)"
    ),
    "test_criterion_4_triviality_agreement": (
        "4", "table scan and hom check agree on 20+ setups including eps(1)=2x"
    ),
    "test_criterion_5_free_exactness": (
        "5", "free choices exactly multiplicative on full Z^2 and Z^3 windows"
    ),
    "test_criterion_6_extension_chain": (
        "6", "radical extension chain certified; rootless chain exits with code 3"
    ),
    "test_criterion_7_counterexample_lemmas": (
        "7", "finite-prime analyzer: initial reduction, forced powers, conflict"
        " and divisibility verdicts"
    ),
    "test_criterion_8_exact_roots": (
        "8", "nth_root recovers 200+ random perfect powers with exact degrees"
    ),
}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    outcomes = {}
    for status in ("passed", "failed"):
        for rep in terminalreporter.stats.get(status, []):
            if getattr(rep, "when", None) != "call":
                continue
            name = rep.nodeid.rsplit("::", 1)[-1]
            if name in ACCEPTANCE:
                outcomes[name] = status == "passed"
    for rep in terminalreporter.stats.get("error", []):
        name = rep.nodeid.rsplit("::", 1)[-1]
        if name in ACCEPTANCE:
            outcomes[name] = False
    if not outcomes:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name, (num, desc) in ACCEPTANCE.items():
        if name in outcomes:
            verdict = "PASS" if outcomes[name] else "FAIL"
            terminalreporter.write_line(f"acceptance {num}: {verdict} - {desc}")
