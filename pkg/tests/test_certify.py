import dataclasses
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_force_representable, one_dim_representable, random_small_set
from torusnormal import certify
from torusnormal.certify import (
    DiscriminatingFunction, ExhaustiveProof, HnCertificate, NssCertificate, certificate_from_witness,
    counterexample, counterexample_library, discriminating_function, dumps, exhaustive_proof,
    find_discriminating_function, loads, membership_problems, nss_certificate_problems, representable_1d,
    verify_hn_certificate, verify_nss_certificate)
from torusnormal.checks import counterexample_instances
from torusnormal.rootsystem import RootSystem, fundamental_weight, simple_reflections, weight_set
from torusnormal.saturation import VectorSet, is_saturated

B2_SET = [(2, 0), (1, 1), (0, 1)]


def b2_certificate(f=(3, 4)):
    return NssCertificate("test", tuple(B2_SET), (1, 0), (0,), (Fraction(1, 2),), (0, 1, -1),
                          DiscriminatingFunction(f))


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=4), st.integers(-30, 30))
@settings(max_examples=300, deadline=None)
def test_one_dimensional_membership(values, target):
    assert representable_1d(values, target) == one_dim_representable(values, target)


def test_printed_functional_values():
    f = (3, 4)
    assert [3 * a + 4 * b for a, b in B2_SET] == [6, 7, 4]
    assert not representable_1d([6, 7, 4], 3)
    ce = counterexample("C-(1,1,1,1)").instantiate(4)
    vals = [sum(a * b for a, b in zip(ce.discriminator.f, v)) for v in ce.vectors]
    assert vals == [17, 3, 13, 3]
    assert sum(a * b for a, b in zip(ce.discriminator.f, ce.v0)) == 10


def test_verifier_accepts_and_rejects():
    assert verify_nss_certificate(b2_certificate(), B2_SET)
    assert not verify_nss_certificate(b2_certificate((1, 1)), B2_SET)
    bad_q = dataclasses.replace(b2_certificate(), q=(Fraction(3, 2),), indep=(0,))
    assert not verify_nss_certificate(bad_q)
    assert not verify_nss_certificate(b2_certificate(), [(2, 0), (1, 1)])
    bad_z = dataclasses.replace(b2_certificate(), z=(1, 0, 0))
    assert any("integer" in p for p in nss_certificate_problems(bad_z))
    dep = dataclasses.replace(b2_certificate(), indep=(0, 0), q=(Fraction(1, 4), Fraction(1, 4)))
    assert nss_certificate_problems(dep)


def test_exhaustive_proof_verification():
    proof = exhaustive_proof(B2_SET, (1, 0))
    assert proof is not None
    cert = dataclasses.replace(b2_certificate(), discriminator=proof)
    assert verify_nss_certificate(cert)
    # a representable target is caught by the level-set search
    fake = NssCertificate("fake", ((1, 0), (0, 1)), (1, 1), (0, 1), (Fraction(1), Fraction(1)), (1, 1),
                          ExhaustiveProof((1, 1), 2))
    assert nss_certificate_problems(fake)


def test_discriminating_function_search():
    w = is_saturated(B2_SET)
    f = find_discriminating_function(w, B2_SET, coeff_bound=5)
    assert f is not None and max(abs(x) for x in f.f) <= 5
    vals = [sum(a * b for a, b in zip(f.f, v)) for v in B2_SET]
    assert not one_dim_representable(vals, sum(a * b for a, b in zip(f.f, w.v0)))
    assert discriminating_function([(1, 0), (0, 1)], (1, 1)) is None


@given(st.integers(0, 10 ** 6))
@settings(max_examples=100, deadline=None)
def test_certificates_from_random_witnesses(seed):
    rng = random.Random(seed)
    vecs = random_small_set(rng)
    vs = VectorSet.of(vecs)
    if not len(vs):
        return
    w = is_saturated(vs)
    if w is None:
        return
    cert = certificate_from_witness(w, vs)
    assert verify_nss_certificate(cert, vs)
    assert not brute_force_representable(cert.vectors, cert.v0)
    # round trip: identical bytes and verdicts
    again = loads(dumps(cert))
    assert dumps(again) == dumps(cert)
    assert verify_nss_certificate(again, vs)


def test_library_has_sixteen_entries():
    names = [ce.name for ce in counterexample_library()]
    assert len(names) == len(set(names)) == 16


def test_every_library_instance_verifies():
    for label, cert, rs, lam in counterexample_instances():
        assert nss_certificate_problems(cert) == [], label
        assert membership_problems(cert, rs, lam) == [], label
        assert not brute_force_representable(cert.vectors, cert.v0) if len(cert.v0) <= 3 else True


def test_library_vectors_lie_in_enumerated_weight_sets():
    for label, cert, rs, lam in counterexample_instances():
        if rs.n > 6:
            continue
        members = set(weight_set(rs, lam).scaled_members)
        scale = 2 // cert.denominator
        assert {tuple(scale * x for x in v) for v in cert.vectors} <= members, label


def test_padding_rules():
    c = counterexample("B-(1/2,...)").instantiate(6)
    assert len(c.vectors) == 6 and all(len(v) == 6 and v[5] == v[4] for v in c.vectors)
    c = counterexample("C-(1,1,1)").instantiate(5)
    assert c.vectors[0] == (1, 1, 1, 0, 0)
    c = counterexample("D-(3/2,1/2,1/2,...)").instantiate(4, (1,))
    assert c.vectors == ((3, 1, 1, 1), (-1, -3, 1, 1), (1, 3, 1, 1), (-1, 1, 1, 1))
    c = counterexample("D-(1/2,...)").instantiate(9)
    assert all(v[7] == v[8] == v[0] for v in c.vectors) and c.v0 == (2, 0, 0, 0, 0, 0, 0, 2, 2)
    with pytest.raises(ValueError):
        counterexample("B-(2,0)").instantiate(3)
    with pytest.raises(ValueError):
        counterexample("D-(3/2,1/2,1/2,...)").instantiate(5, (1,))


def test_hn_certificates():
    rs = RootSystem("B", 3)
    vecs = weight_set(rs, fundamental_weight(rs, 3)).integer_members
    assert verify_hn_certificate(HnCertificate("b3", vecs, "Unimodular", {}, 2))
    rs6 = RootSystem("D", 6)
    vecs6 = weight_set(rs6, fundamental_weight(rs6, 6)).integer_members
    gens = [g.to_json() for g in simple_reflections(rs6)]
    assert verify_hn_certificate(HnCertificate("d6", vecs6, "Ratio2Structural", {"group": gens}, 2))
    assert verify_hn_certificate(HnCertificate("d6", vecs6, "Ratio2Structural", {"group": certify.STABILIZER}, 2))
    signs = [v for v in __import__("itertools").product((1, -1), repeat=4)]
    assert not verify_hn_certificate(HnCertificate("signs", tuple(signs), "Unimodular"))
    assert not verify_hn_certificate(HnCertificate("b3", vecs, "Ratio2Structural", {}, 2))
    cert = HnCertificate("d6", vecs6, "Ratio2Structural", {"group": gens, "m": 64}, 2)
    assert dumps(loads(dumps(cert))) == dumps(cert)


def test_loads_rejects_unknown_kind():
    with pytest.raises(ValueError):
        loads('{"kind": "other", "vectors": []}')
