#!/usr/bin/env python3
"""Split the Project Gutenberg texts shipped in the Canterbury corpus into
per-chapter documents under corpora/.

Usage: split_canterbury.py TESTDATA_DIR OUT_DIR

TESTDATA_DIR is any copy of the Canterbury corpus (for example the
tests/testdata directory of the brotli source distribution).
"""
import json
import pathlib
import re
import sys


def split(text, pattern):
    marks = [m.start() for m in re.finditer(pattern, text, re.M)]
    return [text[a:b] for a, b in zip(marks, marks[1:] + [len(text)])]


def write(out, label, prefix, parts):
    d = out / label.lower()
    d.mkdir(parents=True, exist_ok=True)
    manifest = {}
    for i, part in enumerate(parts, 1):
        name = f"{prefix}_{i:02d}.txt"
        (d / name).write_text(part.strip() + "\n", encoding="utf-8")
        manifest[name] = label
    (d / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


def main():
    src, out = pathlib.Path(sys.argv[1]), pathlib.Path(sys.argv[2])
    alice = (src / "alice29.txt").read_text(encoding="latin-1")
    alice = alice[: alice.find("THE END")]
    write(out, "Carroll", "alice_chapter", split(alice, r"^\s+CHAPTER [IVX]+\s*$"))

    milton = (src / "plrabn12.txt").read_text(encoding="latin-1")
    milton = milton[: milton.find("THE END")] if "THE END" in milton else milton
    write(out, "Milton", "paradise_lost_book", split(milton, r"^Book [IVX]+\s*$"))

    play = (src / "asyoulik.txt").read_text(encoding="latin-1")
    acts = split(play, r"^\tAS YOU LIKE IT\n\nACT I\n|^ACT [IVX]+\n\n\n\nSCENE I\t")
    write(out, "Shakespeare", "as_you_like_it_act", acts)


if __name__ == "__main__":
    main()
