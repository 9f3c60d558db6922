"""The container tree over F_{n,m}(C4): parameter derivation, per-node
hypergraph selection, tree growth with exhaustive member tracking, leaf
classification, and the edge-count weight phi."""

import json
import math

import pytest

from c4containers import (
    PHI_FITTED_CONSTANTS,
    PreconditionError,
    ScaleError,
    TreeParams,
    build_tree,
    choose_hypergraph,
    classify_leaves,
    complete_pregraph,
    count_Fnm_c4,
    fnm_table_backtracking,
    max_degree,
    phi_log,
    tree_json,
    tree_lines,
    tree_summary,
    verify_coverage,
)
from c4containers.pregraph import Pregraph

pytestmark = pytest.mark.filterwarnings("ignore:parameter floor binds")


def test_derived_parameters_at_7_10():
    with pytest.warns(UserWarning, match="parameter floor binds"):
        params = TreeParams(7, 10)
    assert params.K == 500.0
    log_n = math.log(7)
    xi = 1 / math.log(log_n)
    assert params.b == math.floor(xi * 10 / log_n**2) == 3
    assert params.r == 1  # raw value floors to zero at desk scale
    assert params.shrink == 2.0**-42 / 500.0
    expected_cap = math.ceil(2 * log_n / params.shrink + 10 / params.shrink)
    assert params.depth_cap == expected_cap


def test_parameter_validation():
    with pytest.raises(PreconditionError):
        TreeParams(2, 1)
    with pytest.raises(PreconditionError):
        TreeParams(7, 0)
    with pytest.raises(PreconditionError):
        TreeParams(7, 22)
    with pytest.raises(PreconditionError):
        TreeParams(7, 5, eps=1.0)
    with pytest.raises(PreconditionError):
        TreeParams(7, 5, beta=-1.0)


def test_selection_on_the_complete_root():
    params = TreeParams(7, 10)
    sel = choose_hypergraph(complete_pregraph(7), params)
    assert sel.selected
    assert sel.case == 3
    assert sel.ell == 4
    assert sel.i == 2
    h = sel.hypergraph
    assert h.e() >= params.beta * sel.ell**4
    assert max_degree(h, 0, 1) * 7 <= sel.ell**3
    assert max_degree(h, 0, 2) <= sel.ell
    assert max_degree(h, 1, 0) <= sel.ell**2


def test_selection_refuses_leaf_pregraphs():
    params = TreeParams(7, 10)
    leafy = Pregraph(7, [(4, 5)], [(0, 1), (0, 2), (1, 2)])
    with pytest.raises(PreconditionError):
        choose_hypergraph(leafy, params)


def test_tree_scale_guard():
    with pytest.raises(ScaleError):
        build_tree(TreeParams(9, 5))


def walk_structure(tree):
    """Shared structural invariants of any built tree."""
    params = tree.params
    ids = [nd.node_id for nd in tree.nodes]
    assert ids == sorted(set(ids))
    by_id = {nd.node_id: nd for nd in tree.nodes}
    assert tree.root.parent_id == -1
    for nd in tree.nodes:
        if nd.node_id != tree.root.node_id:
            parent = by_id[nd.parent_id]
            assert nd in parent.children
            assert nd.depth == parent.depth + 1
        assert nd.depth <= params.depth_cap
        if nd.is_leaf:
            assert nd.classification
            assert not nd.children
        else:
            assert nd.children
            # members partition across the children
            assert sum(c.members for c in nd.children) == nd.members
            # canonical child order by fingerprint
            keys = [(c.fingerprint.s0, c.fingerprint.s1) for c in nd.children]
            assert keys == sorted(keys)
            for c in nd.children:
                shrunk = c.pregraph.e_m() <= (1 - params.shrink) * nd.pregraph.e_m()
                grew = c.pregraph.e_e() >= nd.pregraph.e_e() + params.shrink * params.r
                if c.status != "fallback_leaf":
                    assert shrunk or grew
    assert tree.root.members == tree.total_members


@pytest.mark.parametrize("m", [3, 13, 15])
def test_forced_trees_cover_every_member(m):
    tree = build_tree(TreeParams(7, m), force=True)
    assert tree.total_members == count_Fnm_c4(7, m)
    covered, total = verify_coverage(tree)
    assert (covered, total) == (tree.total_members, tree.total_members)
    walk_structure(tree)
    buckets = classify_leaves(tree)
    assert sum(len(v) for v in buckets.values()) == len(tree.leaves())


def test_default_tree_small_m_is_an_honest_fallback():
    """Below the scale where the degree condition can hold, the default
    build refuses to pretend: the root is a single fallback leaf recording
    the minimal feasible K."""
    tree = build_tree(TreeParams(7, 10))
    assert len(tree.nodes) == 1
    root = tree.root
    assert root.status == "fallback_leaf"
    assert root.classification.startswith("container_hypothesis(min_k=")
    covered, total = verify_coverage(tree)
    assert covered == total == count_Fnm_c4(7, 10)


def test_default_tree_expands_when_the_condition_holds():
    tree = build_tree(TreeParams(7, 18))
    assert len(tree.nodes) > 1
    assert any(not nd.is_leaf for nd in tree.nodes)
    covered, total = verify_coverage(tree)
    assert covered == total == count_Fnm_c4(7, 18)
    walk_structure(tree)
    for nd in tree.nodes:
        if not nd.is_leaf:
            assert nd.normalized is not None


def test_summary_and_lines_shape():
    tree = build_tree(TreeParams(7, 18))
    summary = tree_summary(tree)
    assert summary["covered"] == summary["total_members"]
    assert summary["n_nodes"] == len(tree.nodes)
    assert summary["n_leaves"] == len(tree.leaves())
    assert set(summary["leaf_counts"]) == {"almost_split", "discarded", "fallback"}
    assert sum(summary["leaf_counts"].values()) == summary["n_leaves"]
    # a leaf can hold at most C(e(M), m - e(E)) members, the mass it reports
    for bucket in summary["leaves"].values():
        for info in bucket:
            if info["members"]:
                assert math.log(info["members"]) <= info["log_count"] + 1e-9

    parsed = json.loads(tree_json(tree))
    assert parsed["params"]["n"] == 7 and parsed["params"]["m"] == 18

    lines = tree_lines(tree)
    assert lines[0].startswith("# node_id parent_id status")
    assert len(lines) == 1 + len(tree.nodes)
    first = lines[1].split()
    assert int(first[0]) == tree.root.node_id
    assert first[2] in ("internal", "leaf", "fallback_leaf")


def test_leaf_reclassification_at_looser_eps():
    tree = build_tree(TreeParams(7, 18))
    tight = classify_leaves(tree)
    loose = classify_leaves(tree, eps=0.2)
    assert len(loose["almost_split"]) >= len(tight["almost_split"])


def test_phi_exact_matches_direct_recomputation():
    table = fnm_table_backtracking(5)
    for m in range(1, 11):
        for p in (0.2, 0.5, 0.8):
            expected = math.log(table[m]) + m * math.log(p / (1 - p))
            got = phi_log(5, m, p, "exact")
            assert got.value == pytest.approx(expected, abs=1e-12)
    assert phi_log(5, 0, 0.3, "exact").value == 0.0


def test_phi_bounds_bracket_exact_counts():
    for n in range(3, 9):
        for m in range(1, math.comb(n, 2) + 1):
            for p in (0.2, 0.5):
                exact = phi_log(n, m, p, "exact").value
                lo = phi_log(n, m, p, "lower_bound").value
                hi = phi_log(n, m, p, "upper_bound").value
                assert lo <= exact + 1e-9, (n, m, p)
                assert exact <= hi + 1e-9, (n, m, p)


def test_phi_deletion_branch_activates_in_the_sparse_regime():
    # n=8, m=1 sits inside m <= 0.1 * n^(4/3); a huge gamma must be rejected
    assert 1 <= 0.1 * 8 ** (4 / 3)
    with pytest.raises(PreconditionError):
        phi_log(8, 1, 0.3, "lower_bound", gamma=5.0)
    # outside the regime gamma is never touched
    phi_log(8, 20, 0.3, "lower_bound", gamma=5.0)


def test_phi_argument_errors():
    with pytest.raises(PreconditionError):
        phi_log(6, 3, 0.0, "exact")
    with pytest.raises(PreconditionError):
        phi_log(6, 99, 0.3, "exact")
    with pytest.raises(PreconditionError):
        phi_log(6, 3, 0.3, "bogus_mode")
    with pytest.raises(ScaleError):
        phi_log(9, 3, 0.3, "exact")


def test_phi_constants_documented():
    assert set(PHI_FITTED_CONSTANTS) == {
        "c_lower",
        "c_container",
        "gamma",
        "deletion_regime",
        "provenance",
    }
    assert "fitted" in PHI_FITTED_CONSTANTS["provenance"]
