#!/usr/bin/env python3
"""Extract the graph corpus from the LaTeX/TikZ source of the article.

Each tikzpicture that carries a coordinate block becomes one graph file in
the model format. Run from the repository root:

    python3 tools/extract_corpus.py ARTICLE.md crates/core/corpus

It also regenerates crates/core/src/corpus/data.rs, which embeds the files.
"""
import json
import re
import sys
from decimal import Decimal, getcontext
from pathlib import Path

getcontext().prec = 60

COORDS = re.compile(r"\\foreach \\i/\\x/\\y in \{(.*?)\}", re.S)
EDGES = re.compile(r"\\foreach \\i/\\j in \{(.*?)\}", re.S)
RED = re.compile(r"\\draw\[red,thin\] \(p-(\d+)\) -- \(p-(\d+)\);")
CAPTION = re.compile(r"\\(?:captionof\{figure\}|subcaption\*|caption)\{(.*)\}\s*$", re.M)
DEV_LINE = re.compile(r"\{\\par\\centering(.*?)\\par\}")
CLAIM = re.compile(r"((?:\\vert P?\d+,P?\d+\\vert=?)+)\\approx([0-9.]+)")
PAIR = re.compile(r"\\vert P?(\d+),P?(\d+)\\vert")

# (id, symmetry label) per coordinate block, in source order. The title-page
# figure repeats the first 51-vertex asymmetric figure of the examples section.
BLOCK_IDS = [
    ("title_51", None),
    ("harborth_52", None),
    ("eps_27_left", "rotational(3)"),
    ("eps_27_right", "rotational(3)"),
    ("eps_42", "point"),
    ("eps_42_limit", "point"),
]


def blocks(text):
    starts = [m.start() for m in re.finditer(r"\\begin\{tikzpicture\}", text)]
    starts.append(len(text))
    for a, b in zip(starts, starts[1:]):
        chunk = text[a:b]
        if COORDS.search(chunk):
            yield chunk


def parse_block(chunk):
    verts, labels = [], []
    for item in COORDS.search(chunk).group(1).split(","):
        i, x, y = item.strip().split("/")
        labels.append(int(i))
        verts.append((x, y))
    # paper labels are 1-based and may skip numbers; files use dense 0-based indices
    index_of = {label: k for k, label in enumerate(labels)}
    edges = []
    for item in EDGES.search(chunk).group(1).split(","):
        i, j = (int(t) for t in item.strip().split("/"))
        edges.append(tuple(sorted((index_of[i], index_of[j]))))
    red = [tuple(sorted((index_of[int(i)], index_of[int(j)]))) for i, j in RED.findall(chunk)]
    sub = re.search(r"\\subcaption\*\{(.*)\}\s*$", chunk, re.M)
    caps = CAPTION.findall(chunk)
    caption = sub.group(1).strip() if sub else (caps[-1].strip() if caps else "")
    dev = DEV_LINE.search(chunk)
    claim_text = (dev.group(1) if dev else "") + " " + caption
    caption = plain(caption)
    if dev and plain(dev.group(1)):
        caption = f"{caption}: {plain(dev.group(1))}"
    claims = []
    for chain, value in CLAIM.findall(claim_text):
        for i, j in PAIR.findall(chain):
            claims.append((tuple(sorted((index_of[int(i)], index_of[int(j)]))), value))
    dense = labels == list(range(1, len(labels) + 1))
    return verts, edges, red, caption, claims, None if dense else labels


def plain(tex):
    for a, b in [("\\small", ""), ("\\vert ", "|"), ("\\vert", "|"), ("\\approx", "≈"),
                 ("\\varepsilon", "ε"), ("$", "")]:
        tex = tex.replace(a, b)
    return " ".join(tex.split())


def render(doc):
    """Canonical layout; must match the toolkit's own serializer byte for byte."""
    def s(v):
        return json.dumps(v, ensure_ascii=False)

    def block(key, rows):
        if not rows:
            return f'  "{key}": []'
        return f'  "{key}": [\n' + ",\n".join("    " + r for r in rows) + "\n  ]"

    parts = [f'  "id": {s(doc["id"])}', f'  "caption": {s(doc["caption"])}',
             f'  "symmetry": {s(doc["symmetry"])}']
    if "labels" in doc:
        parts.append(f'  "labels": [{", ".join(str(x) for x in doc["labels"])}]')
    parts.append(block("vertices", [f"[{s(x)}, {s(y)}]" for x, y in doc["vertices"]]))
    parts.append(block("edges", [f"[{u}, {v}]" for u, v in doc["edges"]]))
    parts.append(block("red_edges", [f"[{u}, {v}]" for u, v in doc["red_edges"]]))
    parts.append(block("claimed_deviations", [
        f'{{"edge": [{c["edge"][0]}, {c["edge"][1]}], "length": {s(c["length"])}}}'
        for c in doc["claimed_deviations"]]))
    return "{\n" + ",\n".join(parts) + "\n}\n"


def length(verts, e):
    (x1, y1), (x2, y2) = verts[e[0]], verts[e[1]]
    dx, dy = Decimal(x1) - Decimal(x2), Decimal(y1) - Decimal(y2)
    return (dx * dx + dy * dy).sqrt()


def main(src, out):
    text = Path(src).read_text()
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    parsed = [parse_block(c) for c in blocks(text)]
    ids = list(BLOCK_IDS)
    counters = {}
    for verts, _, _, caption, _, _ in parsed[len(BLOCK_IDS):]:
        n = len(verts)
        m = re.match(r"(\d+) vertices, ([^:]*)", caption)
        desc, sym = None, None
        if m:
            d = m.group(2)
            sym = {"asymmetric": "asymmetric", "mirror symmetry": "mirror",
                   "point symmetry": "point",
                   "rotational symmetry of order 3": "rotational(3)"}[d]
            desc = {"rotational(3)": "rot3", "asymmetric": "asym"}.get(sym, sym)
        key = (n, desc)
        counters[key] = counters.get(key, 0) + 1
        base = f"fig_{n}v" + (f"_{desc}" if desc else "")
        ids.append((base, sym, counters[key]))
    # suffix letters only where a base id repeats
    totals = {}
    for entry in ids[len(BLOCK_IDS):]:
        totals[entry[0]] = totals.get(entry[0], 0) + 1
    final = list(BLOCK_IDS)
    for base, sym, k in ids[len(BLOCK_IDS):]:
        final.append((base + (f"_{chr(96 + k)}" if totals[base] > 1 else ""), sym))

    index = []
    written = {}
    order = list(zip(final, parsed))
    order = order[1:] + order[:1]
    for (gid, sym), (verts, edges, red, caption, claims, labels) in order:
        assert len(set(edges)) == len(edges), gid
        es = set(edges)
        assert all(r in es for r in red), gid
        key = (tuple(verts), tuple(sorted(edges)), tuple(sorted(red)))
        if key in written:
            index[written[key]]["aliases"].append(gid)
            continue
        rs = set(red)
        worst = max((abs(length(verts, e) - 1) for e in edges if e not in rs), default=0)
        for e, v in claims:
            if e not in rs:
                print(f"  ! {gid}: claimed edge {e} is not red ({'gray' if e in es else 'absent'})")
        # claimed_deviations must reference red edges; the raw caption keeps the rest
        claims = [(e, v) for e, v in claims if e in rs]
        for e, v in claims:
            if e in es and abs(length(verts, e) - Decimal(v)) > Decimal("1e-9"):
                print(f"  ! {gid}: claim {e}={v} but length {length(verts, e):.12f}")
        doc = {
            "id": gid,
            "caption": caption,
            "symmetry": sym,
            "vertices": [[x, y] for x, y in verts],
            "edges": [list(e) for e in sorted(edges)],
            "red_edges": [list(e) for e in sorted(red)],
            "claimed_deviations": [{"edge": list(e), "length": v} for e, v in claims],
        }
        if labels is not None:
            doc["labels"] = labels
        if not re.match(r"\d+ vertices|The ", doc["caption"]):
            sep = ": " if doc["caption"].startswith("|") else ", "
            doc["caption"] = f"{len(verts)} vertices{sep}{doc['caption']}"
        (out / f"{gid}.json").write_text(render(doc), encoding="utf-8")
        written[key] = len(index)
        index.append({"id": gid, "file": f"{gid}.json", "caption": doc["caption"], "aliases": []})
        print(f"{gid:20} n={len(verts):3} m={len(edges):3} red={len(red)} "
              f"sym={sym} gray_dev={float(worst):.2e} claims={len(claims)} "
              f"claim_err={max((abs(length(verts, e) - Decimal(v)) for e, v in claims), default=0):.1e}")
    (out / "index.json").write_text(
        "[\n" + ",\n".join("  " + json.dumps(e, ensure_ascii=False) for e in index) + "\n]\n",
        encoding="utf-8")
    # list ordering by (vertex count, id) is done by the toolkit
    rs_path = out.parent / "src" / "corpus" / "data.rs"
    rs_path.parent.mkdir(parents=True, exist_ok=True)
    lines = ["// Generated by tools/extract_corpus.py; do not edit.", "",
             "pub(super) const INDEX: &str = include_str!(\"../../corpus/index.json\");", "",
             "pub(super) const FILES: &[(&str, &str)] = &["]
    for e in index:
        lines.append(f'    ("{e["id"]}", include_str!("../../corpus/{e["file"]}")),')
    lines.append("];")
    rs_path.write_text("\n".join(lines) + "\n")
    print(f"{len(index)} entries from {len(parsed)} coordinate blocks")


if __name__ == "__main__":
    main(*sys.argv[1:3])
