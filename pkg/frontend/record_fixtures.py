"""Regenerate the recorded service responses under test/fixtures/.

The console's contract tests compare rendered values against these
recordings; re-run this script whenever the service's report shape changes:

    python3 frontend/record_fixtures.py
"""

import json
from pathlib import Path

from fastapi.testclient import TestClient

from sdkit.service import create_app

SD_CSV = """,a,b,c
a,0,2,3
b,-2,0,1
c,-3,-1,0
"""

PARTIAL_CSV = """# phi_star = 1
,a,b,c
a,0,1,NA
b,-1,0,NA
c,NA,NA,0
"""

OUT = Path(__file__).parent / "test" / "fixtures"


def record() -> None:
    client = TestClient(create_app(console_dir="/nonexistent"))
    OUT.mkdir(parents=True, exist_ok=True)

    sid = client.post("/sessions", json={"format": "sd", "content": SD_CSV}).json()["id"]
    fix_t = {
        "report": client.get(f"/sessions/{sid}/report").json(),
        "ladder": client.get(f"/sessions/{sid}/ladder").json(),
    }
    (OUT / "fix_t.json").write_text(json.dumps(fix_t, indent=2) + "\n")

    sid = client.post("/sessions", json={"format": "partial", "content": PARTIAL_CSV}).json()["id"]
    fix_part = {
        "report": client.get(f"/sessions/{sid}/report").json(),
        "suggestion": client.get(f"/sessions/{sid}/suggestion").json(),
        "refinement": client.post(
            f"/sessions/{sid}/refinements", json={"x": "a", "y": "c", "value": 0.5}
        ).json(),
    }
    (OUT / "fix_part.json").write_text(json.dumps(fix_part, indent=2) + "\n")
    print(f"wrote {OUT / 'fix_t.json'} and {OUT / 'fix_part.json'}")


if __name__ == "__main__":
    record()
