#!/usr/bin/env python3
"""Generate data/wesr_bench_stats_fixture.jsonl.

A 927-utterance synthetic corpus whose tag statistics reproduce the
published benchmark composition exactly:

  total tags per utterance   1: 657   2: 184   >=3: 86
  unique tags per utterance  1: 699   2: 180   >=3: 48
  total occurrences          1918 (1128 continuous / 790 discrete)

Utterance texts are plain placeholder words; only the tag structure
matters for corpus statistics.
"""

import json
import os

CONTINUOUS = ["crying", "laughing", "panting", "shouting", "singing", "whispering"]
DISCRETE = [
    "breathing", "chuckle", "clear_throat", "cough", "crowd_laughter",
    "cry", "exhale", "giggle", "inhale", "laughs", "roar", "scream",
    "shout", "sigh", "sobbing",
]

# (total tags, unique tags) per utterance group; see derivation in the
# docstring constraints: a=20, b=22, c=16 solve the unique-bucket system.
def build_shapes():
    shapes = []
    # >=3-total group first so the continuous budget boundary lands on
    # singleton groups and comes out exact.
    extra_total = 1918 - 657 * 1 - 184 * 2 - 86 * 3  # 635 duplicates to spread
    per, rem = divmod(extra_total, 86)
    big = []
    big += [(3 + per + (1 if i < rem else 0), 1) for i in range(22)]        # b
    big += [(3 + per + (1 if 22 + i < rem else 0), 2) for i in range(16)]   # c
    big += [(3 + per + (1 if 38 + i < rem else 0), 3) for i in range(48)]
    shapes += big
    shapes += [(2, 1)] * 20      # a: same tag twice
    shapes += [(2, 2)] * 164
    shapes += [(1, 1)] * 657
    assert len(shapes) == 927
    assert sum(t for t, _ in shapes) == 1918
    return shapes


def main():
    out_path = os.path.join(os.path.dirname(__file__), os.pardir, "data",
                            "wesr_bench_stats_fixture.jsonl")
    shapes = build_shapes()
    cont_budget = 1128
    ci = di = 0  # rotating name pickers
    lines = []
    for idx, (total, unique) in enumerate(shapes):
        # multiplicities per unique name: near-even split
        base, rem = divmod(total, unique)
        mults = [base + (1 if k < rem else 0) for k in range(unique)]
        names = []
        for m in mults:
            if cont_budget >= m:
                names.append((CONTINUOUS[ci % len(CONTINUOUS)], "cont", m))
                ci += 1
                cont_budget -= m
            else:
                names.append((DISCRETE[di % len(DISCRETE)], "disc", m))
                di += 1
        # ensure names are distinct within the utterance
        assert len({n for n, _, _ in names}) == unique, names
        # lay out: one word per occurrence; continuous tag wraps its word,
        # discrete tag sits in the gap before its word
        occs = []
        for name, kind, m in names:
            occs += [(name, kind)] * m
        parts = []
        for w, (name, kind) in enumerate(occs):
            word = f"w{w}"
            if kind == "cont":
                parts.append(f"<{name}>{word}</{name}>")
            else:
                parts.append(f"[{name}] {word}")
        text = " ".join(parts)
        lines.append(json.dumps(
            {"id": f"utt{idx:04d}", "text": text, "language": "en"},
            ensure_ascii=False))
    assert cont_budget == 0, cont_budget
    with open(out_path, "w", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")
    print(f"wrote {len(lines)} records -> {out_path}")


if __name__ == "__main__":
    main()
