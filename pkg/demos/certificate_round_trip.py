"""Find a non-saturated subset, write its certificate, read it back and verify it."""

from torusnormal import certify
from torusnormal.rootsystem import RootSystem, Weight
from torusnormal.classify import classify

rs = RootSystem("C", 4)
report = classify(rs, Weight.from_coords((1, 1, 1, 1)))
cert = report.certificate
print(f"{rs} (1,1,1,1): {report.verdict}")
print(f"  vectors {list(cert.vectors)}")
print(f"  v0 = {cert.v0} = sum of {[str(q) for q in cert.q]} times members {list(cert.indep)}")
if isinstance(cert.discriminator, certify.DiscriminatingFunction):
    f = cert.discriminator.f
    vals = [sum(a * b for a, b in zip(f, v)) for v in cert.vectors]
    print(f"  f = {f}: values {vals}, target {sum(a * b for a, b in zip(f, cert.v0))}")
text = certify.dumps(cert)
back = certify.loads(text)
print(f"  round trip identical: {certify.dumps(back) == text}, verifies: {certify.verify(back)}")
