import warnings

import pytest
from hypothesis import given, strategies as st

from localcharge.algebra.polynomial import FreeVector
from localcharge.cone import (FPModule, ModuleMap, NotFiniteLength, cone_ring, cramer_relations,
                              double_dual_with_ev, finite_length, hom_to_ring,
                              independent_subset, pi_pullback)
from localcharge.laurent import LaurentPoly

import oracles


@pytest.mark.parametrize("k", range(1, 9))
def test_relation_count(k):
    assert len(cone_ring(k).relations) == k * (k - 1) // 2


def test_small_rings():
    assert cone_ring(1).relations == ()
    x0, x1, x2 = cone_ring(2).gens()
    assert cone_ring(2).relations in ((x0 * x2 - x1 ** 2,), (x1 ** 2 - x0 * x2,))
    S3 = cone_ring(3)
    x = S3.gens()
    for f in (x[0] * x[2] - x[1] ** 2, x[1] * x[3] - x[2] ** 2, x[0] * x[3] - x[1] * x[2]):
        assert S3.ideal.contains(f)


def test_pi_pullback_examples():
    x0, x1, x2 = cone_ring(2).gens()
    assert pi_pullback(x0 * x2 - x1 ** 2).is_zero()
    assert pi_pullback(x1) == LaurentPoly.monomial(1, 1)
    assert pi_pullback(x0 ** 2 + x2) == LaurentPoly.monomial(2, 0) + LaurentPoly.monomial(1, 2)


@given(st.integers(1, 4),
       st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4),
                          st.integers(-3, 3)), max_size=6),
       st.booleans())
def test_pullback_vanishes_exactly_on_the_ideal(k, terms, add_relation):
    S = cone_ring(k)
    x = S.gens()
    f = S.ring.zero
    for a, b, c, coeff in terms:
        f = f + x[min(a, k)] * x[min(b, k)] * x[min(c, k)] * coeff
    if add_relation and S.relations:
        f = S.relations[-1] * (x[0] + 2)
    assert pi_pullback(f).is_zero() == S.reduce(f).is_zero()


# duals


def test_dual_of_free_module_is_free():
    S = cone_ring(2)
    D, K = hom_to_ring(FPModule.free(S, 3))
    assert D.ngens == 3 and not D.relations


def test_dual_of_torsion_module_vanishes():
    S = cone_ring(1)
    x0, _ = S.gens()
    D, K = hom_to_ring(FPModule.quotient(S, [x0]))
    assert D.ngens == 0 and K == []


def test_dual_of_maximal_ideal_in_the_plane_is_the_ring():
    S = cone_ring(1)
    x0, x1 = S.gens()
    M = FPModule.ideal(S, [x0, x1])
    D, K = hom_to_ring(M)
    assert D.ngens == 1 and not D.relations
    # the generator is the inclusion, sending x_i to x_i
    assert list(K[0].entries) in ([x0, x1], [-x0, -x1])


def test_double_dual_of_free_module_is_an_isomorphism():
    S = cone_ring(2)
    M = FPModule.free(S, 2)
    DD, ev = double_dual_with_ev(M)
    assert DD.ngens == 2
    assert finite_length(ev.cokernel()) == 0
    assert ev.diagnostics["torsion_free"]


def test_double_dual_of_maximal_ideal_has_length_one_cokernel():
    S = cone_ring(1)
    x0, x1 = S.gens()
    DD, ev = double_dual_with_ev(FPModule.ideal(S, [x0, x1]))
    assert DD.ngens == 1 and not DD.relations
    assert ev.is_well_defined()
    assert finite_length(ev.cokernel()) == 1


@pytest.mark.parametrize("k", [2, 3])
def test_double_dual_of_cone_maximal_ideal(k):
    # the maximal ideal of a normal surface singularity has reflexive hull S
    S = cone_ring(k)
    M = FPModule.ideal(S, S.gens())
    DD, ev = double_dual_with_ev(M)
    assert DD.ngens == 1 and not DD.relations
    assert finite_length(ev.cokernel()) == 1


def test_torsion_input_is_reported():
    S = cone_ring(2)
    x0, x1, x2 = S.gens()
    M = FPModule(S, 2, (FreeVector(S.ring, [x0, S.ring.zero]),))
    with pytest.warns(RuntimeWarning, match="not torsion-free"):
        DD, ev = double_dual_with_ev(M)
    assert not ev.diagnostics["torsion_free"]
    assert DD.ngens == 1


def _corpus():
    S2, S3 = cone_ring(2), cone_ring(3)
    x = S2.gens()
    y = S3.gens()
    one2 = S2.ring.one
    return [
        FPModule.free(S2, 2),
        FPModule.ideal(S2, [x[0], x[1]]),
        FPModule.ideal(S2, S2.gens()),
        FPModule.ideal(S3, [y[0], y[1]]),
        FPModule.ideal(S3, [y[0] ** 2, y[1] * y[2], y[3]]),
        FPModule(S2, 3, (FreeVector(S2.ring, [x[1], -x[0], S2.ring.zero]),)),
        FPModule(S2, 2, (FreeVector(S2.ring, [x[0] + one2, x[2]]),)),
    ]


@pytest.mark.parametrize("M", _corpus(), ids=lambda m: repr(m))
def test_double_duals_are_reflexive(M):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        DD, ev = double_dual_with_ev(M)
    assert ev.is_well_defined()
    DDDD, ev2 = double_dual_with_ev(DD)
    assert ev2.diagnostics["torsion_free"]
    assert finite_length(ev2.cokernel()) == 0


def test_independent_subset_and_cramer_relations():
    S = cone_ring(2)
    x0, x1, x2 = S.gens()
    vecs = [FreeVector(S.ring, [x0, x1]), FreeVector(S.ring, [x1, x2]),
            FreeVector(S.ring, [x0 + x1, x1 + x2])]
    assert len(independent_subset(vecs, S)) == 1
    rels = cramer_relations(vecs, S)
    assert len(rels) == 2
    for rel in rels:
        total = FreeVector.zero(S.ring, 2)
        for c, v in zip(rel.entries, vecs):
            total = total + v * c
        assert S.reduce_vector(total).is_zero()


def test_module_map_kernel_and_cokernel():
    S = cone_ring(1)
    x0, x1 = S.gens()
    src = FPModule.free(S, 2)
    tgt = FPModule.free(S, 1)
    f = ModuleMap(src, tgt, (FreeVector(S.ring, [x0]), FreeVector(S.ring, [x1])))
    ker = f.kernel_generators()
    assert len(ker) == 1
    assert f.apply(ker[0]).is_zero()
    assert finite_length(f.cokernel()) == 1


# finite length


def test_finite_length_examples():
    S2 = cone_ring(2)
    x = S2.gens()
    assert finite_length(FPModule(S2, 0)) == 0
    assert finite_length(FPModule.quotient(S2, x)) == 1
    assert finite_length(FPModule.quotient(S2, [x[0] ** 2, x[1], x[2]])) == 2
    with pytest.raises(NotFiniteLength):
        finite_length(FPModule.quotient(S2, [x[0]]))


def _laurent_entries(vec):
    return [dict(pi_pullback(e).terms) for e in vec.entries]


@pytest.mark.parametrize("k,gens_exps", [
    (2, [(0, 2), (1, 1), (2, 1)]),
    (2, [(0, 3), (1, 2), (2, 2), (0, 1)]),
    (3, [(0, 2), (1, 1), (2, 1), (3, 1)]),
    (3, [(0, 1), (3, 1), (1, 2), (2, 2)]),
])
def test_finite_length_matches_degreewise_count(k, gens_exps):
    S = cone_ring(k)
    x = S.gens()
    polys = [x[i] ** e for i, e in gens_exps]
    M = FPModule.quotient(S, polys)
    rels = [[dict(pi_pullback(f).terms)] for f in polys]
    dims = oracles.homogeneous_quotient_length(k, 1, rels, 8)
    assert dims[-1] == 0 and dims[-2] == 0
    assert finite_length(M) == sum(dims)


def test_finite_length_of_a_rank_two_quotient_matches_count():
    S = cone_ring(2)
    x0, x1, x2 = S.gens()
    z = S.ring.zero
    rels = [FreeVector(S.ring, v) for v in (
        [x0, z], [x1, -x0], [x2, -x1], [z, x1], [z, x2], [z, x0 ** 2])]
    M = FPModule(S, 2, tuple(rels))
    dims = oracles.homogeneous_quotient_length(2, 2, [_laurent_entries(v) for v in rels], 6)
    assert finite_length(M) == sum(dims)


def test_hilbert_function_of_free_module():
    S = cone_ring(2)
    # dim of degree <= d part of S is sum_{e<=d} (2e + 1) = (d+1)^2
    assert FPModule.free(S, 1).hilbert_function(4) == [1, 4, 9, 16, 25]
    assert FPModule.free(S, 2, degrees=(0, 1)).hilbert_function(2) == [1, 5, 13]
