#!/usr/bin/env python3
"""Regenerates the bundled toy bitext under data/.

Two artificial languages with disjoint vocabularies and trigram
distributions ("aa" and "bb"), plus a Greek-script donor language ("cc")
for wrong-language noise. Deterministic; commit the outputs.
"""
import json
import random
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "data"

AA_CONS = ["k", "t", "m", "r", "s", "n"]
AA_VOW = ["a", "o", "u"]
BB_CONS = ["v", "z", "p", "g", "l", "d"]
BB_VOW = ["e", "i"]
CC_SYLL = ["λα", "μο", "πε", "ρι", "σω", "θη", "γυ", "δα"]


def word(rng, cons, vow):
    return "".join(
        rng.choice(cons) + rng.choice(vow) for _ in range(rng.randint(2, 4))
    )


def cc_word(rng):
    return "".join(rng.choice(CC_SYLL) for _ in range(rng.randint(2, 4)))


def sentence(rng, make_word, n):
    return " ".join(make_word(rng) for _ in range(n))


def main():
    OUT.mkdir(exist_ok=True)
    rng = random.Random(20240901)
    with (OUT / "toy_corpus.jsonl").open("w", encoding="utf-8") as f:
        for i in range(2500):
            n = rng.randint(4, 18)
            m = max(1, n + rng.randint(-2, 2))
            rec = {
                "id": i,
                "src": sentence(rng, lambda r: word(r, AA_CONS, AA_VOW), n),
                "tgt": sentence(rng, lambda r: word(r, BB_CONS, BB_VOW), m),
                "src_lang": "aa",
                "tgt_lang": "bb",
                "provenance": "toy",
            }
            f.write(json.dumps(rec, ensure_ascii=False) + "\n")
    with (OUT / "toy_donor.jsonl").open("w", encoding="utf-8") as f:
        for i in range(300):
            n = rng.randint(4, 14)
            m = max(1, n + rng.randint(-2, 2))
            rec = {
                "id": i,
                "src": sentence(rng, lambda r: word(r, AA_CONS, AA_VOW), n),
                "tgt": sentence(rng, cc_word, m),
                "src_lang": "aa",
                "tgt_lang": "cc",
                "provenance": "toy-donor",
            }
            f.write(json.dumps(rec, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main()
