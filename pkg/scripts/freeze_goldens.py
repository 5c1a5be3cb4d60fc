"""Regenerate the frozen regression files under tests/golden.

Run only after an intentional behaviour change; the tests compare against
these bytes.
"""

import io
from pathlib import Path

from cginject.cli import main
from cginject.groups import load_profile
from cginject.io import dumps, map_to_json
from cginject.modmaps import random_map

GOLDEN = Path(__file__).resolve().parents[1] / "tests" / "golden"


def freeze():
    GOLDEN.mkdir(exist_ok=True)
    G, _ = load_profile("dihedral3")
    m = random_map(G, 2, 3, support=3, seed=42)
    (GOLDEN / "random_map_dihedral3_seed42.json").write_text(dumps(map_to_json(m, G)) + "\n")
    buf = io.StringIO()
    code = main(["fuzz", "--trials", "200", "--seed", "42", "--profile", "dihedral3", "--json"],
                out=buf)
    assert code == 0
    (GOLDEN / "fuzz_dihedral3_seed42.json").write_text(buf.getvalue())


if __name__ == "__main__":
    freeze()
