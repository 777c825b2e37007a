"""Classify every small dominant weight and print the normal ones per root system."""

import sys

from torusnormal.classify import HN, theorem1_scan

height = int(sys.argv[1]) if len(sys.argv) > 1 else 6
scan = theorem1_scan({"B": (2, 4), "C": (3, 4), "D": (4, 6)}, height)
for key, s in scan.summary()["per_root_system"].items():
    normal = [str(r.weight) for r in scan.reports if str(r.root_system) == key and r.verdict == HN]
    print(f"{key}: {s['weights']} weights, normal: {', '.join(normal) or '-'}")
print(f"discrepancies against the table: {len(scan.discrepancies)}")
