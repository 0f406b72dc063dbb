"""Regenerate tests/fixtures/*.json from the suite: python3 tests/make_fixtures.py"""

from pathlib import Path

from braidquiver import jsonio
from braidquiver.arrangement import braid_poset
from braidquiver.quiverrep import zero_rep

from suite import (
    broken_composition,
    broken_invertibility,
    broken_monotonicity,
    broken_transitivity,
    suite_a1,
    suite_a2,
)

HERE = Path(__file__).parent / "fixtures"


def fixtures() -> dict:
    a1, a2 = suite_a1(), suite_a2()
    return {
        "const1_a1": a1["const1"],
        "sky0_a1": a1["sky0"],
        "sum_a1": a1["const1+sky0"],
        "mono2_a1": a1["mono2"],
        "const1_a2": a2["const1"],
        "phi13_const1_a2": a2["phi13(const1)"],
        "zero_a2": zero_rep(braid_poset(2)),
        "broken_monotonicity_a1": broken_monotonicity(),
        "broken_invertibility_a1": broken_invertibility(),
        "broken_composition_a2": broken_composition()[0],
        "broken_transitivity_a2": broken_transitivity(),
    }


if __name__ == "__main__":
    HERE.mkdir(exist_ok=True)
    for name, rep in fixtures().items():
        jsonio.write_json(HERE / f"{name}.json", jsonio.rep_to_json(rep))
