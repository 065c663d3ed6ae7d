import pytest

from wfrefine import corpus
from wfrefine.net import InvalidWorkflowNet, Kind, NetError, PetriNet, UnknownNodeError, validate_wf, workflow


def chain():
    return PetriNet(frozenset({"a", "b"}), frozenset({"A"}), frozenset({("a", "A"), ("A", "b")}))


def test_preset_postset():
    net = chain()
    assert net.preset("A") == {"a"}
    assert net.postset("A") == {"b"}
    assert net.preset("a") == frozenset()


def test_preset_of_fig7_B():
    assert corpus.fig7_N().net.preset("B") == {"b", "c"}


def test_preset_unknown_node():
    with pytest.raises(UnknownNodeError):
        chain().preset("zz")


def test_lifted_presets():
    net = corpus.fig7_N().net
    assert net.preset_of(["A", "B"]) == {"a", "b", "c"}
    assert net.postset_of(["A", "B"]) == {"b", "c"}


def test_places_and_transitions_disjoint():
    with pytest.raises(NetError):
        PetriNet(frozenset({"x"}), frozenset({"x"}), frozenset())


def test_arcs_must_be_bipartite():
    with pytest.raises(NetError):
        PetriNet(frozenset({"a", "b"}), frozenset(), frozenset({("a", "b")}))
    with pytest.raises(UnknownNodeError):
        PetriNet(frozenset({"a"}), frozenset({"A"}), frozenset({("a", "B")}))


def test_single_place_is_valid():
    wf = validate_wf(PetriNet(frozenset({"p"}), frozenset(), frozenset()), {"p"}, {"p"}, Kind.PLACE)
    assert wf.one_input_one_output


def test_isolated_place_unreachable():
    net = PetriNet(frozenset({"a", "b", "z"}), frozenset({"A"}), frozenset({("a", "A"), ("A", "b")}))
    with pytest.raises(InvalidWorkflowNet) as err:
        validate_wf(net, {"a"}, {"b"}, Kind.PLACE)
    assert any("'z' is unreachable from the inputs" in v for v in err.value.violations)
    assert any("'z' cannot reach any output" in v for v in err.value.violations)


def test_fig7_is_valid():
    wf = corpus.fig7_N()
    assert wf.kind is Kind.PLACE
    assert wf.inputs == {"a"} and wf.outputs == {"c"}


def test_violations_are_exhaustive():
    net = PetriNet(frozenset({"a", "b"}), frozenset({"A"}), frozenset({("a", "A")}))
    with pytest.raises(InvalidWorkflowNet) as err:
        validate_wf(net, {"a"}, {"A"}, Kind.PLACE)
    text = " | ".join(err.value.violations)
    assert "'A'" in text and "'b'" in text


def test_empty_border_rejected():
    with pytest.raises(InvalidWorkflowNet, match="input set is empty"):
        validate_wf(chain(), set(), {"b"}, Kind.PLACE)


def test_kind_inferred_from_inputs():
    assert workflow([], ["t"], [], ["t"], ["t"]).kind is Kind.TRANSITION
    assert workflow(["p"], [], [], ["p"], ["p"]).kind is Kind.PLACE


def test_find_cycle():
    assert corpus.fig7_N().net.find_cycle() is not None
    assert corpus.sequential3().net.find_cycle() is None
    cycle = corpus.por_border_cycle().net.find_cycle()
    assert set(cycle) == {"i", "x", "o", "y"}


def test_reachability_helpers():
    net = corpus.sequential3().net
    assert net.forward_reachable({"p"}) == {"p", "t2", "o"}
    assert net.backward_reachable({"p"}) == {"p", "t1", "i"}
