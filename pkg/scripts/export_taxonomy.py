"""Write the gesture taxonomy document to data/taxonomy.json.

Run from the repository root after any taxonomy change:

    python scripts/export_taxonomy.py
"""
import json
from pathlib import Path

from trymove.taxonomy import taxonomy_document

if __name__ == "__main__":
    out = Path(__file__).resolve().parents[1] / "data" / "taxonomy.json"
    out.parent.mkdir(exist_ok=True)
    out.write_text(json.dumps(taxonomy_document(), indent=1) + "\n")
    print(f"wrote {out}")
