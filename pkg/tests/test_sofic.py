import pytest

from shannonpda.builders import (
    asymmetric_pair,
    build_beal_heller,
    build_dyck,
    build_example_84,
    build_markov_dyck,
    build_product,
    clone_controls,
    duplicate_labels,
    golden_mean_graph,
    pushes_only,
)
from shannonpda.engine import _step, states_up_to
from shannonpda.sofic import (
    NotFound,
    VisibilityConstants,
    build_y_presentation,
    test_projection_hypothesis as projection_hypothesis,
    trimmed_y,
    visibility_constants,
)

GOLDEN = golden_mean_graph()


def test_y_dyck():
    y = build_y_presentation(build_dyck(2))
    assert y.vertices == {"V"}
    assert sorted(y.label[e.id] for e in y.edges) == ["q1", "q2"]


def test_y_example_84_has_no_edge_into_v_prime():
    y = build_y_presentation(build_example_84())
    assert all(e.dst != "V'" for e in y.edges)
    assert "V'" not in trimmed_y(build_example_84()).vertices


@pytest.mark.parametrize("spec,expected", [
    (build_dyck(2), True),
    (build_markov_dyck(GOLDEN), True),
    (build_product(GOLDEN), True),
    (build_example_84(), True),
    (duplicate_labels(), False),
    (clone_controls(), False),
])
def test_projection_hypothesis(spec, expected):
    assert projection_hypothesis(spec) is expected


def _y_words(spec, m):
    y = trimmed_y(spec)
    paths = [((), v) for v in y.vertices]
    for _ in range(m):
        paths = [(w + (y.label[e.id],), e.dst) for w, v in paths for e in y.graph.out_edges(v)]
    return {w for w, _ in paths}


def _explicit_condition_a(spec, m):
    """Least offset for words of Y of length m, by running every state with stack <= m."""
    last = 0
    for w in _y_words(spec, m):
        ends = set()
        for s in states_up_to(spec, m):
            pushed_at = 0
            for k, sym in enumerate(w, 1):
                t = _step(spec, s, sym)
                if t is None:
                    break
                if len(t.stack) > len(s.stack) or sym in spec.pushes(s.control):
                    pushed_at = k
                s = t
            else:
                ends.add(s.control)
                last = max(last, pushed_at)
        if len(ends) > 1:
            return None
    return None if last >= m else max(1, last + 1)


@pytest.mark.parametrize("spec", [
    build_dyck(2), build_markov_dyck(GOLDEN), build_beal_heller({"1": 2}), build_example_84(),
    duplicate_labels(), asymmetric_pair(),
])
def test_visibility_matches_explicit_oracle(spec):
    for m in range(1, 4):
        oracle = _explicit_condition_a(spec, m)
        if oracle is not None:
            c = visibility_constants(spec, cap=3)
            assert isinstance(c, VisibilityConstants)
            assert (c.M, c.M_circ) == (m, oracle)
            return
    assert isinstance(visibility_constants(spec, cap=3), NotFound)


def test_constants_dyck_and_markov_dyck():
    for spec in (build_dyck(2), build_markov_dyck(GOLDEN)):
        c = visibility_constants(spec, cap=16)
        assert c.to_json() == {"M": 1, "M_circ": 1, "J": 1, "M_G": 3}


def test_beal_heller_j():
    c = visibility_constants(build_beal_heller({"1": 2}), cap=16)
    assert c.J == 2 and c.M_G == c.M_circ * 3 + c.M


def test_not_found():
    c = visibility_constants(duplicate_labels(), cap=4)
    assert isinstance(c, NotFound) and c.cap == 4
    assert c.to_json()["found"] is False
    assert isinstance(visibility_constants(pushes_only(), cap=4), NotFound)
    with pytest.raises(ValueError):
        visibility_constants(build_dyck(2), cap=0)
