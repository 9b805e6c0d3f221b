import itertools

import pytest
from hypothesis import given, strategies as st

from quantvar.groupaction import close_generators, identity as identity_perm, verify_group
from quantvar.varlattice import (
    ClosureTooLargeError,
    DomainMismatchError,
    NotAccessibleError,
    PhiSpace,
    Variable,
    VariableSystem,
    check_exclusion,
    coarsen,
    constant_variable,
    equivalent,
    identity_variable,
    is_related,
    less_or_equal,
    strictly_below,
    variable_from_labels,
)

SPACE4 = PhiSpace(points=("a", "b", "c", "d"))


def all_signatures(n):
    """Independent partition enumeration: restricted growth strings."""
    if n == 0:
        return
    stack = [(0,)]
    while stack:
        prefix = stack.pop()
        if len(prefix) == n:
            yield prefix
            continue
        for nxt in range(max(prefix) + 2):
            stack.append(prefix + (nxt,))


def all_variables(space):
    return [
        variable_from_labels(space, f"v{i}", sig)
        for i, sig in enumerate(all_signatures(space.size))
    ]


def exists_label_function(alpha, beta):
    """Brute-force oracle: some map from beta's labels to alpha's labels
    turns beta into alpha."""
    beta_vals = sorted(beta.value_set(), key=repr)
    alpha_vals = sorted(alpha.value_set(), key=repr)
    for image in itertools.product(alpha_vals, repeat=len(beta_vals)):
        mapping = dict(zip(beta_vals, image))
        if all(mapping[beta.values[p]] == alpha.values[p] for p in alpha.space.points):
            return True
    return False


def test_phispace_rejects_duplicate_points():
    with pytest.raises(ValueError, match="unique"):
        PhiSpace(points=("a", "a"))


def test_phispace_rejects_non_unit_embedding():
    with pytest.raises(ValueError, match="unit"):
        PhiSpace(points=("a",), embedding={"a": (1.0, 1.0)})


def test_variable_must_be_total():
    with pytest.raises(ValueError, match="undefined"):
        Variable(name="x", space=SPACE4, values={"a": 0, "b": 0, "c": 1})


def test_constant_below_everything():
    const = constant_variable(SPACE4)
    for beta in all_variables(SPACE4):
        assert less_or_equal(const, beta)


def test_identity_partition_is_an_upper_bound():
    phi = identity_variable(SPACE4)
    for alpha in all_variables(SPACE4):
        assert less_or_equal(alpha, phi)


def test_four_point_refinement_example():
    alpha = variable_from_labels(SPACE4, "alpha", [0, 0, 1, 1])
    beta = variable_from_labels(SPACE4, "beta", ["x", "y", "z", "z"])
    assert less_or_equal(alpha, beta)
    assert not less_or_equal(beta, alpha)
    # Agreement with the function-enumeration oracle in both directions.
    assert exists_label_function(alpha, beta)
    assert not exists_label_function(beta, alpha)


def test_order_agrees_with_function_enumeration_oracle():
    variables = all_variables(PhiSpace(points=("a", "b", "c")))
    for alpha, beta in itertools.product(variables, repeat=2):
        assert less_or_equal(alpha, beta) == exists_label_function(alpha, beta)


def test_domain_mismatch_raises():
    other = PhiSpace(points=("x", "y", "z", "w"))
    with pytest.raises(DomainMismatchError):
        less_or_equal(constant_variable(SPACE4), constant_variable(other))


def test_equivalent_under_relabeling():
    alpha = variable_from_labels(SPACE4, "alpha", [0, 0, 1, 1])
    relabeled = variable_from_labels(SPACE4, "relabeled", ["hi", "hi", "lo", "lo"])
    assert equivalent(alpha, relabeled)


def test_equivalent_fails_across_partition_sizes():
    alpha = variable_from_labels(SPACE4, "alpha", [0, 0, 1, 1])
    beta = variable_from_labels(SPACE4, "beta", [0, 1, 2, 3])
    assert not equivalent(alpha, beta)


def test_two_distinct_two_block_partitions_differ():
    alpha = variable_from_labels(SPACE4, "alpha", [0, 0, 1, 1])
    beta = variable_from_labels(SPACE4, "beta", [0, 1, 0, 1])
    assert not equivalent(alpha, beta)
    assert alpha.partition_signature() != beta.partition_signature()


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_partial_order_axioms_exhaustive(n):
    space = PhiSpace(points=tuple(f"p{i}" for i in range(n)))
    variables = all_variables(space)
    for alpha in variables:
        assert less_or_equal(alpha, alpha)
    for alpha, beta in itertools.product(variables, repeat=2):
        if less_or_equal(alpha, beta) and less_or_equal(beta, alpha):
            assert equivalent(alpha, beta)
    for alpha, beta, gamma in itertools.product(variables, repeat=3):
        if less_or_equal(alpha, beta) and less_or_equal(beta, gamma):
            assert less_or_equal(alpha, gamma)


def test_coarsening_closure():
    # Every surjection of a generator's values yields an accessible,
    # comparable variable.
    beta = variable_from_labels(SPACE4, "beta", [0, 1, 2, 2])
    system = VariableSystem(phi=SPACE4, generators=[beta])
    for mapping in [{0: "x", 1: "x", 2: "y"}, {0: 0, 1: 1, 2: 1}, {0: 9, 1: 9, 2: 9}]:
        coarse = coarsen(beta, mapping)
        assert less_or_equal(coarse, beta)
        assert system.is_accessible(coarse)


def test_is_maximal_single_generator():
    theta = variable_from_labels(SPACE4, "theta", [0, 0, 1, 1])
    system = VariableSystem(phi=SPACE4, generators=[theta])
    assert system.is_maximal(theta)


def test_is_maximal_false_for_strict_coarsening():
    lam = variable_from_labels(SPACE4, "lam", [0, 1, 2, 3])
    theta = variable_from_labels(SPACE4, "theta", [0, 0, 1, 1])
    system = VariableSystem(phi=SPACE4, generators=[lam])
    assert not system.is_maximal(theta)


def test_is_maximal_requires_accessibility():
    gen = variable_from_labels(SPACE4, "gen", [0, 0, 1, 1])
    system = VariableSystem(phi=SPACE4, generators=[gen])
    stranger = variable_from_labels(SPACE4, "stranger", [0, 1, 0, 1])
    with pytest.raises(NotAccessibleError):
        system.is_maximal(stranger)


def test_constant_never_maximal_unless_alone():
    const = constant_variable(SPACE4, "const")
    gen = variable_from_labels(SPACE4, "gen", [0, 0, 1, 1])
    assert not VariableSystem(phi=SPACE4, generators=[gen]).is_maximal(const)
    alone = VariableSystem(phi=SPACE4, generators=[coarsen(const, {0: 0}, "only")])
    assert alone.is_maximal(const)


def test_explicit_closure_matches_refinement_criterion():
    gen_a = variable_from_labels(SPACE4, "ga", [0, 0, 1, 2])
    gen_b = variable_from_labels(SPACE4, "gb", [0, 1, 1, 1])
    system = VariableSystem(phi=SPACE4, generators=[gen_a, gen_b])
    closure_sigs = {v.partition_signature() for v in system.accessible_variables()}
    for v in all_variables(SPACE4):
        assert (v.partition_signature() in closure_sigs) == system.is_accessible(v)


def test_maximality_agrees_with_explicit_closure_scan():
    gen_a = variable_from_labels(SPACE4, "ga", [0, 0, 1, 2])
    gen_b = variable_from_labels(SPACE4, "gb", [0, 1, 1, 1])
    system = VariableSystem(phi=SPACE4, generators=[gen_a, gen_b])
    closure = system.accessible_variables()
    for v in closure:
        oracle = not any(strictly_below(v, other) for other in closure)
        assert system.is_maximal(v) == oracle


def test_closure_enumeration_cap():
    big = PhiSpace(points=tuple(f"p{i}" for i in range(13)))
    gen = variable_from_labels(big, "g", list(range(13)))
    with pytest.raises(ClosureTooLargeError):
        VariableSystem(phi=big, generators=[gen]).accessible_variables()


def test_phi_member_inaccessible_by_default():
    gen = variable_from_labels(SPACE4, "gen", [0, 0, 1, 1])
    system = VariableSystem(phi=SPACE4, generators=[gen])
    assert not system.phi_variable.accessible
    identity_gen = variable_from_labels(SPACE4, "fine", [0, 1, 2, 3])
    declared = VariableSystem(phi=SPACE4, generators=[identity_gen])
    assert declared.phi_variable.accessible


def test_related_to_itself_via_identity():
    theta = variable_from_labels(SPACE4, "theta", [0, 0, 1, 1])
    group = verify_group([identity_perm(4)])
    assert is_related(theta, theta, group) == (0, 1, 2, 3)


def test_planar_reflection_relates_the_two_sign_readings():
    # Points at 45, 135, 225, 315 degrees.  theta reads the sign of the
    # cosine, eta the sign of the sine; the in-plane reflection
    # angle -> 90 - angle swaps the 135 and 315 points and carries theta
    # onto eta, as an exhaustive witness search confirms.
    space = PhiSpace(points=("a45", "a135", "a225", "a315"))
    theta = variable_from_labels(space, "theta", [+1, -1, -1, +1])
    eta = variable_from_labels(space, "eta", [+1, +1, -1, -1])
    reflection = (0, 3, 2, 1)
    group = close_generators([reflection])
    assert is_related(theta, eta, group) == reflection


def test_unrelated_when_block_profiles_differ():
    theta = variable_from_labels(SPACE4, "theta", [0, 0, 1, 1])
    eta = variable_from_labels(SPACE4, "eta", [0, 1, 2, 2])
    group = close_generators([(1, 2, 3, 0)])
    assert is_related(theta, eta, group) is None


def test_relaxed_relatedness_allows_label_bijection():
    theta = variable_from_labels(SPACE4, "theta", [0, 0, 1, 1])
    eta = variable_from_labels(SPACE4, "eta", ["x", "x", "y", "y"])
    group = verify_group([identity_perm(4)])
    assert is_related(theta, eta, group) is None
    assert is_related(theta, eta, group, up_to_relabeling=True) == (0, 1, 2, 3)


@given(st.integers(0, 199), st.integers(0, 199), st.integers(1, 3))
def test_relatedness_symmetry(i, j, gen_index):
    space = PhiSpace(points=("a", "b", "c", "d"))
    sigs = list(all_signatures(4))
    theta = variable_from_labels(space, "theta", sigs[i % len(sigs)])
    eta = variable_from_labels(space, "eta", sigs[j % len(sigs)])
    gens = {1: [(1, 2, 3, 0)], 2: [(1, 0, 3, 2)], 3: [(0, 2, 1, 3), (3, 1, 2, 0)]}
    group = close_generators(gens[gen_index])
    forward = is_related(theta, eta, group)
    backward = is_related(eta, theta, group)
    assert (forward is None) == (backward is None)


def test_exclusion_lambda_equal_theta_fails_hypotheses():
    # lambda = theta is related to eta through the same witness, so the
    # unrelatedness hypothesis is reported as failed.
    space = PhiSpace(points=("a", "b", "c", "d"))
    theta = variable_from_labels(space, "theta", [0, 0, 1, 1])
    eta = variable_from_labels(space, "eta", [1, 1, 0, 0])
    group = close_generators([(2, 3, 0, 1)])
    system = VariableSystem(phi=space, generators=[theta, eta], group=group)
    report = check_exclusion(system, theta, eta, theta)
    assert report.status == "hypotheses_not_met"
    assert any("related to eta" in f for f in report.failed_hypotheses)


def test_exclusion_report_carries_refinement_witness():
    # lambda is a strict coarsening of the generator: the maximality
    # section must name the refining generator even though the
    # relatedness hypotheses fail.
    gen = variable_from_labels(SPACE4, "gen", [0, 1, 2, 3])
    lam = variable_from_labels(SPACE4, "lam", [0, 0, 1, 1])
    system = VariableSystem(phi=SPACE4, generators=[gen])
    report = check_exclusion(system, gen, gen, lam)
    assert report.status == "hypotheses_not_met"
    verdict = report.maximality["lambda"]
    assert verdict.accessible and verdict.maximal is False
    assert verdict.refined_by == "gen"
    assert not verdict.is_maximal_accessible


def subgroups_of_s3():
    elements = [tuple(p) for p in itertools.permutations(range(3))]
    seen = {}
    for size in range(1, 3):
        for subset in itertools.combinations(elements, size):
            g = close_generators(list(subset))
            seen[g.elements] = g
    return list(seen.values())


def test_no_counterexample_on_exhaustive_three_point_systems():
    # Every partition triple against every subgroup of the full symmetry
    # group of three points: the exclusion check must never find a maximal
    # variable satisfying its hypotheses.
    space = PhiSpace(points=("a", "b", "c"))
    variables = all_variables(space)
    for group in subgroups_of_s3():
        for theta, eta in itertools.product(variables, repeat=2):
            system = VariableSystem(phi=space, generators=[theta, eta], group=group)
            for lam in variables:
                assert check_exclusion(system, theta, eta, lam).status != "counterexample"


def test_system_document_round_trip():
    space = PhiSpace(points=("a", "b", "c", "d"))
    theta = variable_from_labels(space, "theta", ["u", "u", "v", "v"])
    group = close_generators([(1, 0, 3, 2)])
    system = VariableSystem(phi=space, generators=[theta], group=group)

    from quantvar.varlattice import system_from_document, system_to_document

    doc = system_to_document(system)
    rebuilt = system_from_document(doc)
    assert rebuilt.phi.points == space.points
    assert rebuilt.group is not None and rebuilt.group.order == 2
    assert rebuilt.generators[0].partition_signature() == theta.partition_signature()
