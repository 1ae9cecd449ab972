"""Deterministic JSON/CSV report writers.

Identical configuration and seed must produce byte-identical files, so
reports carry no timestamps and keys are sorted.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path


def write_json(path, payload):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")
    return path


def write_eigenvalue_csv(path, eigenvalues):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["k", "eigenvalue"])
        for k, lam in enumerate(eigenvalues):
            writer.writerow([k, repr(float(lam))])
    return path


def write_bounds_csv(path, report):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["bound", "applicable", "value", "computed", "verdict"])
        for e in report.entries:
            d = e.as_dict()
            writer.writerow([d["name"], d["applicable"], d["bound"],
                             d["computed"], d["verdict"]])
    return path
