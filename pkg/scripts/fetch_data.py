#!/usr/bin/env python3
"""Fetch and cache the real-network fixtures used by the case-study tests.

Downloads go into data/ next to the repository root:

  david_copperfield.txt   edge list (112 nouns/adjectives, 425 edges)
  prison.dat              raw 67x67 directed sociomatrix (token skip 4)
  power_us.txt            edge list (4941-vertex western US power grid)

Each file is converted/validated and recorded in data/checksums.json on
first fetch; later runs verify the cached copy against the stored checksum.
Run with --offline to only verify what is already cached.

The library itself never fetches anything; tests skip when a fixture is
missing.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
import urllib.request
import zipfile
from io import BytesIO
from pathlib import Path

DATA_DIR = Path(__file__).resolve().parent.parent / "data"
CHECKSUMS = DATA_DIR / "checksums.json"

SOURCES = {
    "david_copperfield.txt": {
        "urls": [
            "https://websites.umich.edu/~mejn/netdata/adjnoun.zip",
            "http://www-personal.umich.edu/~mejn/netdata/adjnoun.zip",
        ],
        "kind": "gml_zip",
        "member": "adjnoun.gml",
        "expect": {"vertices": 112, "edges": 425},
    },
    "prison.dat": {
        "urls": ["http://vlado.fmf.uni-lj.si/pub/networks/data/ucinet/prison.dat"],
        "kind": "raw",
        "expect": {"matrix_order": 67, "skip_tokens": 4},
    },
    "power_us.txt": {
        "urls": [
            "https://websites.umich.edu/~mejn/netdata/power.zip",
            "http://www-personal.umich.edu/~mejn/netdata/power.zip",
        ],
        "kind": "gml_zip",
        "member": "power.gml",
        "expect": {"vertices": 4941, "edges": 6594},
    },
}


def sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def gml_edges(text: str) -> list[tuple[int, int]]:
    """Minimal extractor for Newman-style GML: edge [ source A target B ]."""
    edges = []
    for block in re.findall(r"edge\s*\[(.*?)\]", text, flags=re.S):
        src = re.search(r"source\s+(\d+)", block)
        dst = re.search(r"target\s+(\d+)", block)
        if not (src and dst):
            raise ValueError("edge block without source/target")
        edges.append((int(src.group(1)), int(dst.group(1))))
    if not edges:
        raise ValueError("no edges found in GML document")
    return edges


def download(urls: list[str]) -> bytes:
    last = None
    for url in urls:
        try:
            print(f"  fetching {url}")
            with urllib.request.urlopen(url, timeout=30) as resp:
                return resp.read()
        except Exception as exc:  # noqa: BLE001 - report and try the next mirror
            print(f"    failed: {exc}")
            last = exc
    raise RuntimeError(f"all sources failed ({last})")


def edge_list_text(edges: list[tuple[int, int]]) -> str:
    seen = set()
    lines = []
    for u, v in edges:
        if u == v:
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            continue
        seen.add(key)
        lines.append(f"{key[0]} {key[1]}")
    return "\n".join(lines) + "\n"


def validate(name: str, payload: bytes, spec: dict):
    expect = spec["expect"]
    if spec["kind"] == "raw":
        tokens = payload.decode("utf-8", errors="replace").split()[expect["skip_tokens"]:]
        n = expect["matrix_order"]
        if len(tokens) != n * n:
            raise ValueError(
                f"{name}: expected {n * n} tokens after skipping {expect['skip_tokens']}, got {len(tokens)}; "
                "check the file header layout"
            )
        bad = [t for t in tokens if t not in ("0", "1")]
        if bad:
            raise ValueError(f"{name}: non-binary tokens such as {bad[:3]}")
    else:
        text = payload.decode()
        ids = set()
        count = 0
        for line in text.splitlines():
            if line.startswith("#") or not line.strip():
                continue
            a, b = line.split()
            ids.update((a, b))
            count += 1
        if len(ids) != expect["vertices"] or count != expect["edges"]:
            raise ValueError(
                f"{name}: got {len(ids)} vertices / {count} edges, expected "
                f"{expect['vertices']} / {expect['edges']}"
            )


def fetch(name: str, spec: dict) -> bytes:
    raw = download(spec["urls"])
    if spec["kind"] == "gml_zip":
        with zipfile.ZipFile(BytesIO(raw)) as zf:
            text = zf.read(spec["member"]).decode("latin-1")
        payload = edge_list_text(gml_edges(text)).encode()
    else:
        payload = raw
    validate(name, payload, spec)
    return payload


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--offline", action="store_true", help="only verify cached files, never download")
    parser.add_argument("--force", action="store_true", help="re-download even when cached")
    args = parser.parse_args(argv)

    DATA_DIR.mkdir(exist_ok=True)
    checksums = json.loads(CHECKSUMS.read_text()) if CHECKSUMS.exists() else {}
    status = 0
    for name, spec in SOURCES.items():
        path = DATA_DIR / name
        print(name)
        if path.exists() and not args.force:
            data = path.read_bytes()
            try:
                validate(name, data, spec)
            except ValueError as exc:
                print(f"  cached copy invalid: {exc}")
                status = 1
                continue
            digest = sha256(data)
            if name in checksums and checksums[name] != digest:
                print(f"  checksum mismatch: cached {digest} != recorded {checksums[name]}")
                status = 1
            else:
                checksums.setdefault(name, digest)
                print(f"  cached, sha256 {digest[:16]}... ok")
            continue
        if args.offline:
            print("  missing (offline mode)")
            status = 1
            continue
        try:
            payload = fetch(name, spec)
        except Exception as exc:  # noqa: BLE001
            print(f"  FAILED: {exc}")
            status = 1
            continue
        path.write_bytes(payload)
        checksums[name] = sha256(payload)
        print(f"  saved {path} sha256 {checksums[name][:16]}...")
    CHECKSUMS.write_text(json.dumps(checksums, indent=2) + "\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
