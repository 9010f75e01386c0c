"""Reference basis lists for S_r and S_r^- on the cube, r = 1..3, k = 0..2.

Each file holds one canonical form per line.  The directory can be
redirected with the ``FEEC_GOLDEN_DIR`` environment variable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .forms import DifferentialForm
from .render import format_form, parse_form
from .serendipity import FamilyId, assemble

GOLDEN_CASES = [(fam, r, k) for fam in ("S", "S_minus") for r in (1, 2, 3) for k in (0, 1, 2)]
_STEM = {"S": "S", "S_minus": "Sminus"}


def golden_dir() -> Path:
    env = os.environ.get("FEEC_GOLDEN_DIR")
    if env:
        return Path(env)
    return Path(str(resources.files("feec_bases") / "golden"))


def golden_path(family: str, r: int, k: int) -> Path:
    return golden_dir() / f"{_STEM[family]}_r{r}_k{k}.txt"


def load_golden(family: str, r: int, k: int) -> list[DifferentialForm]:
    text = golden_path(family, r, k).read_text(encoding="utf-8")
    return [parse_form(line, 3) for line in text.splitlines() if line.strip()]


@dataclass
class GoldenComparison:
    family: str
    r: int
    k: int
    expected: int
    generated: int
    missing: list
    extra: list

    @property
    def ok(self) -> bool:
        return not self.missing and not self.extra


def compare_golden(family: str, r: int, k: int) -> GoldenComparison:
    ref = load_golden(family, r, k)
    ours = assemble(FamilyId(family, r, k, 3)).forms
    ref_set, our_set = set(ref), set(ours)
    return GoldenComparison(
        family,
        r,
        k,
        len(ref),
        len(ours),
        [w for w in ref if w not in our_set],
        [w for w in ours if w not in ref_set],
    )


def regenerate(directory: Path | None = None) -> list[Path]:
    directory = golden_dir() if directory is None else Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for family, r, k in GOLDEN_CASES:
        path = directory / f"{_STEM[family]}_r{r}_k{k}.txt"
        forms = assemble(FamilyId(family, r, k, 3)).forms
        path.write_text("".join(format_form(w) + "\n" for w in forms), encoding="utf-8")
        written.append(path)
    return written
