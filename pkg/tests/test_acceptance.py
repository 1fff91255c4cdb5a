"""Acceptance criteria, one test each.  Every test logs a PASS/FAIL line.

All comparisons are exact: set and list equality, integer equality, and
byte equality of CLI output.  Witness lengths are bounded as stated below.
"""

import random
import subprocess
import sys
from itertools import combinations, product

from _acceptance_log import record

from shannonpda.builders import (
    build_beal_heller,
    build_combined,
    build_dyck,
    build_example_84,
    build_markov_dyck,
    build_product,
    clone_controls,
    duplicate_labels,
    golden_mean_graph,
)
from shannonpda.engine import (
    PdaState,
    count_words,
    directly_accessible_controls,
    enumerate_language,
    pop_summaries,
    states_up_to,
    strongly_connected,
)
from shannonpda.model import SpecError, validate
from shannonpda.recode import (
    FiniteTypeDyckData,
    export_finite_type_dyck,
    ftd_to_spec,
    recoded_spec,
    resolving_radius,
    untag,
)
from shannonpda.semigroup import semigroup_alphabet, word_admissible
from shannonpda.separation import brute_force_separable, decide_forward_separated
from shannonpda.sofic import build_y_presentation, test_projection_hypothesis as projection_hypothesis
from shannonpda.sofic import visibility_constants

GOLDEN = golden_mean_graph()
CAP = 16
CLONE_WITNESS_BOUND = 12
LONG_STACK_SAMPLES = 200
LONG_STACK_MAX_LEN = 10
SEED = 20240601


def _oracle_language(spec, n):
    gens = semigroup_alphabet(spec)
    syms = sorted(spec.alphabet)
    return {w for k in range(n + 1) for w in product(syms, repeat=k) if word_admissible(spec, w, gens)}


def test_c01_oracle_dyck():
    ok = True
    details = []
    for n_pairs, n in ((2, 8), (3, 6)):
        spec = build_dyck(n_pairs)
        same = enumerate_language(spec, n) == _oracle_language(spec, n)
        details.append(f"D{n_pairs} n={n}: {'equal' if same else 'differ'}")
        ok &= same
    record(1, "engine language equals semigroup oracle on Dyck shifts", ok, "; ".join(details))
    assert ok


def test_c02_oracle_markov_dyck():
    spec = build_markov_dyck(GOLDEN)
    lang = enumerate_language(spec, 8)
    ok = lang == _oracle_language(spec, 8)
    record(2, "engine language equals semigroup oracle on golden-mean Markov-Dyck", ok, f"{len(lang)} words up to 8")
    assert ok


def test_c03_counts():
    spec = build_dyck(2)
    syms = sorted(spec.alphabet)
    derived = sum(word_admissible(spec, (a, b)) for a in syms for b in syms)
    counts = count_words(spec, 2)
    ok = derived == 14 and counts == [1, 4, 14]
    record(3, "Dyck D2 counts [1, 4, 14]", ok, f"oracle gives {derived} of 16 pairs, engine {counts}")
    assert ok


def test_c04_validation():
    r = validate(build_dyck(2))
    d2_ok = r.condition_a and r.condition_b and r.condition_c and r.hypothesis_h
    try:
        build_dyck(1)
        d1_rejected = False
    except SpecError:
        d1_rejected = True
    clone_fails_c = not validate(clone_controls()).condition_c
    ok = d2_ok and d1_rejected and clone_fails_c
    record(4, "validation of D2, D1 and the clone fixture", ok,
           f"D2 all={d2_ok}, D1 rejected={d1_rejected}, clone fails (c)={clone_fails_c}")
    assert ok


def test_c05_visibility():
    d2 = visibility_constants(build_dyck(2), CAP).to_json()
    md = visibility_constants(build_markov_dyck(GOLDEN), CAP).to_json()
    bh = visibility_constants(build_beal_heller({"1": 2}), CAP)
    want = {"M": 1, "M_circ": 1, "J": 1, "M_G": 3}
    ok = d2 == want and md == want and bh.J == 2
    record(5, "visibility constants", ok, f"D2 {d2}, Markov-Dyck {md}, Beal-Heller J={bh.J}")
    assert ok


def test_c06_projection():
    d2 = projection_hypothesis(build_dyck(2))
    md = projection_hypothesis(build_markov_dyck(GOLDEN))
    dup = projection_hypothesis(duplicate_labels())
    ok = d2 and md and not dup
    record(6, "projection hypothesis", ok, f"D2={d2}, Markov-Dyck={md}, duplicate={dup}")
    assert ok


def test_c07_separation():
    ok = True
    details = []
    for name, spec in (("dyck2", build_dyck(2)), ("product", build_product(GOLDEN, 2)),
                       ("markov-dyck", build_markov_dyck(GOLDEN))):
        c = visibility_constants(spec, CAP)
        verdict = decide_forward_separated(spec, c)
        bound = 2 * c.M_G + 4
        states = states_up_to(spec, 4)
        longest, missing = 0, 0
        for s, t in combinations(states, 2):
            w = brute_force_separable(spec, s, t, bound)
            if w is None:
                missing += 1
            else:
                longest = max(longest, len(w))
        good = verdict.separated and missing == 0
        ok &= good
        details.append(f"{name}: separated={verdict.separated}, {len(states)} states, "
                       f"longest witness {longest} <= {bound}, unseparated {missing}")
    clone = clone_controls()
    v = decide_forward_separated(clone, visibility_constants(clone, CAP))
    w = brute_force_separable(clone, PdaState((), "A"), PdaState((), "B"), CLONE_WITNESS_BOUND)
    clone_ok = not v.separated and tuple(v.failing_pair) == ("A", "B") and w is None
    ok &= clone_ok
    details.append(f"clone: separated={v.separated}, witness up to {CLONE_WITNESS_BOUND}={w}")
    record(7, "forward separation verdicts agree with brute force", ok, "; ".join(details))
    assert ok


def test_c08_long_stack_pairs():
    spec = build_product(GOLDEN, 2)
    m_g = visibility_constants(spec, CAP).M_G
    rng = random.Random(SEED)
    edges = sorted(e.id for e in spec.base.edges)
    controls = spec.all_controls
    failures = 0
    for _ in range(LONG_STACK_SAMPLES):
        lb = rng.randint(m_g + 1, LONG_STACK_MAX_LEN - 1)
        la = rng.randint(lb + 1, LONG_STACK_MAX_LEN)
        a = PdaState(tuple(rng.choice(edges) for _ in range(la)), rng.choice(controls))
        b = PdaState(tuple(rng.choice(edges) for _ in range(lb)), rng.choice(controls))
        if brute_force_separable(spec, a, b, la + m_g) is None:
            failures += 1
    ok = failures == 0
    record(8, "long-stack pairs are separated within |a| + M_G", ok, f"{LONG_STACK_SAMPLES} samples, {failures} failures")
    assert ok


def test_c09_example_84():
    spec = build_example_84()
    accessible = directly_accessible_controls(spec)
    y = build_y_presentation(spec)
    no_in = all(e.dst != "V'" for e in y.edges)
    ok = "V'" not in accessible and no_in
    record(9, "V' is not directly accessible", ok, f"accessible={sorted(accessible)}, no Y edge into V'={no_in}")
    assert ok


def test_c10_recode():
    d = build_dyck(2)
    radius = resolving_radius(d).radius
    tagged = enumerate_language(recoded_spec(d), 6)
    original = enumerate_language(d, 6)
    projected = {untag(w) for w in tagged}
    bijective = projected == original and len(projected) == len(tagged)
    f = export_finite_type_dyck(d)
    labels = {p[0]: p[2] for p in f.push_edges} | {q[0]: q[2] for q in f.pop_edges}
    matching = {(labels[p], labels[q]) for p, q in f.matching}
    reimported = enumerate_language(ftd_to_spec(FiniteTypeDyckData.from_json(f.to_json())), 6) == original
    ok = radius == 0 and bijective and matching == {("p1", "q1"), ("p2", "q2")} and reimported
    record(10, "recoding round trip on D2", ok,
           f"radius={radius}, bijective={bijective}, matching={sorted(matching)}, reimport equal={reimported}")
    assert ok


def test_c11_connectivity():
    specs = {"dyck2": build_dyck(2), "product": build_product(GOLDEN, 2), "markov-dyck": build_markov_dyck(GOLDEN),
             "combined": build_combined(GOLDEN, GOLDEN)}
    results = {k: strongly_connected(s) for k, s in specs.items()}
    conn = all(r.connected and r.witness is None for r in results.values())
    summaries = pop_summaries(build_dyck(2)) == {("d1", "V"): {"V"}, ("d2", "V"): {"V"}}
    ok = conn and summaries
    record(11, "strong connectedness and D2 pop summaries", ok,
           ", ".join(f"{k}={r.connected}" for k, r in results.items()) + f", summaries={summaries}")
    assert ok


def _cli(args, stdin=None):
    p = subprocess.run([sys.executable, "-m", "shannonpda", *args], input=stdin, capture_output=True)
    return p.returncode, p.stdout, p.stderr


def test_c12_cli_determinism(tmp_path):
    specs = {}
    for name, args in (("d2", ["dyck", "--n", "2"]), ("md", ["markov-dyck"]), ("clone", ["clone"]),
                       ("ex84", ["ex84"])):
        code, out, _ = _cli(["example", *args])
        assert code == 0
        path = tmp_path / f"{name}.json"
        path.write_bytes(out)
        specs[name] = str(path)
    commands = [["example", "dyck", "--n", "2"], ["example", "combined"], ["example", "beal-heller", "--I", "K=2"]]
    for f in specs.values():
        commands += [
            ["validate", "-f", f], ["words", "-f", f, "-n", "3"], ["count", "-f", f, "-n", "4"],
            ["member", "-f", f, "-w", "p1,q1"], ["connected", "-f", f], ["hypotheses", "-f", f],
            ["separated", "-f", f, "--brute", "8", "--depth", "2"], ["recode", "-f", f, "--cap", "2"],
            ["export-ftd", "-f", f], ["semigroup", "-f", f, "-w", "e1-,e1+"],
            ["dot", "-f", f, "--what", "y"], ["dot", "-f", f, "--what", "summary"],
            ["dot", "-f", f, "--what", "automaton", "--depth", "2"],
        ]
    differing = [c for c in commands if _cli(c) != _cli(c)]
    ok = not differing
    record(12, "CLI output is byte-identical across runs", ok, f"{len(commands)} commands, {len(differing)} differ")
    assert ok
