"""The full self-check suite: library certificates, volume profiles, sweeps."""

from __future__ import annotations

import itertools

from . import certify
from .rootsystem import RootSystem, fundamental_weight, weight_set
from .saturation import VectorSet
from .structure import CheckResult, structure_checks, volume_profile

# (counterexample, rank, tail) instances; the parametric family and the
# rank-7 half-spin family are exercised at two ranks each
_INSTANCES = (
    ("B-(2,0)", 2, ()), ("B-(1,1)", 3, ()), ("B-(3/2,1/2,...)", 2, ()), ("B-(1/2,...)", 5, ()),
    ("C-(2,1)", 3, ()), ("C-(2,0)", 3, ()), ("C-(1,1,1)", 3, ()), ("C-(1,1,1,1)", 4, ()), ("C-(1,1)", 5, ()),
    ("D-(2,1)", 4, ()), ("D-(2,0)", 4, ()), ("D-(1,1,1)", 4, ()), ("D-(1,1)", 5, ()), ("D-(1,1,1,1)", 4, ()),
    ("D-(3/2,1/2,1/2,...)", 4, (1,)), ("D-(3/2,1/2,1/2,...)", 5, (1, 1)),
    ("D-(1/2,...)", 7, ()), ("D-(1/2,...)", 8, ()),
)


def counterexample_instances():
    """Yield ``(label, certificate, root_system, weight)`` for every library instance."""
    for name, n, tail in _INSTANCES:
        ce = certify.counterexample(name)
        rs = RootSystem(ce.family, n)
        yield f"{name} at rank {n}", ce.instantiate(n, tail), rs, ce.weight(n, tail)


def counterexample_checks() -> list[CheckResult]:
    out = []
    for label, cert, rs, lam in counterexample_instances():
        problems = certify.nss_certificate_problems(cert)
        outside = certify.membership_problems(cert, rs, lam)
        detail = "; ".join(problems + [f"{len(outside)} vectors outside M({lam})"] * bool(outside))
        out.append(CheckResult(f"non-saturated set {label}", not problems and not outside, detail or "ok"))
    return out


_PROFILES = (
    ("B", 4, 4, {8, 16}),
    ("C", 4, 2, {32, 64}),
    ("D", 5, 5, {16, 32, 48}),
    ("D", 6, 6, {64, 128}),
)


def profile_checks() -> list[CheckResult]:
    """Nonzero maximal-minor values of sign vectors and doubled weight sets."""
    out = []
    p = volume_profile(VectorSet.of(itertools.product((1, -1), repeat=4)))
    out.append(CheckResult("sign vectors in dimension 4", set(p.values) == {8, 16}, str(sorted(p.values))))
    for fam, n, k, want in _PROFILES:
        rs = RootSystem(fam, n)
        vs = VectorSet.of(weight_set(rs, fundamental_weight(rs, k)).scaled_members)
        p = volume_profile(vs)
        out.append(CheckResult(f"doubled {fam}{n} pi_{k}", set(p.values) == want, str(sorted(p.values))))
    return out


def full_check_suite() -> list[CheckResult]:
    return counterexample_checks() + profile_checks() + structure_checks()
