"""Regenerate tests/data/idempotence_corpus.json from the seeded snippet generators."""

import json
import random
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from apizer import default_catalog  # noqa: E402
from corpus import loop_snippet, straight_line_snippet  # noqa: E402
from golden import CALENDAR_SNIPPET, COUNT_SNIPPET, DIGEST_SNIPPET  # noqa: E402

SEED = 2024
SIZE = 50


def main() -> None:
    catalog = default_catalog()
    rng = random.Random(SEED)
    cases = [CALENDAR_SNIPPET, DIGEST_SNIPPET, COUNT_SNIPPET]
    while len(cases) < SIZE:
        cases.append(straight_line_snippet(rng, catalog) if len(cases) % 3 else loop_snippet(rng, catalog)[0])
    out = ROOT / "tests" / "data" / "idempotence_corpus.json"
    out.write_text(json.dumps({"seed": SEED, "snippets": cases}, indent=1) + "\n", encoding="utf-8")
    print(f"wrote {len(cases)} snippets to {out}")


if __name__ == "__main__":
    main()
