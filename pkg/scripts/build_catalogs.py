"""Regenerate the identity-suite catalog files under ``src/utstar/catalogs``.

Every line is semantically verified before writing: identity lines must pass
the exact identity check, mutant lines must fail it, and evaluation lines
must reproduce their stated matrix.  Generation is deterministic, so a
rebuild reproduces the shipped files byte for byte.
"""

from __future__ import annotations

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from utstar.catalog_build import render_all, verify_catalogs


def main() -> None:
    counts = verify_catalogs()
    for catalog_id, checked in sorted(counts.items()):
        print(f"{catalog_id}: {checked} items verified")
    target = pathlib.Path(__file__).resolve().parent.parent / "src" / "utstar" / "catalogs"
    target.mkdir(exist_ok=True)
    for name, content in sorted(render_all().items()):
        path = target / name
        path.write_text(content)
        print(f"wrote {path} ({len(content.splitlines())} lines)")


if __name__ == "__main__":
    main()
