#!/usr/bin/env python3
# Copyright 2026 The oodsim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Builds tests/fixtures/bleu_fixture.json.

The main set holds 50 prediction/reference pairs scored with nltk's
corpus_bleu and SmoothingFunction().method2. Every prediction has at least
four tokens; below that nltk charges one phantom n-gram per sentence to each
higher-order denominator. The edge-case sets contain short or empty
predictions and are scored by the plain pooled formula in `pooled_bleu`.
"""

import json
import math
import random
import sys
from collections import Counter
from fractions import Fraction
from pathlib import Path

from nltk.translate.bleu_score import SmoothingFunction, corpus_bleu

# Tokens chosen so that a space-joined sequence lexes back to the same list.
VOCAB = [
    "int", "return", "if", "else", "for", "while", "new", "this", "null",
    "x", "y", "i", "n", "count", "value", "result", "list", "size", "get",
    "add", "0", "1", "2", "42", "(", ")", "{", "}", "[", "]", ";", ",", ".",
    "=", "==", "+", "-", "*", "<", ">", "<=", ">=", "&&", "||", "!", "\"s\"",
]


def pooled_bleu(hyps, refs):
    matches = [0] * 4
    totals = [0] * 4
    c = r = 0
    for h, ref in zip(hyps, refs):
        c += len(h)
        r += len(ref)
        for n in range(1, 5):
            if len(h) < n:
                continue
            hc = Counter(tuple(h[i:i + n]) for i in range(len(h) - n + 1))
            rc = Counter(tuple(ref[i:i + n]) for i in range(len(ref) - n + 1))
            matches[n - 1] += sum(min(v, rc[g]) for g, v in hc.items())
            totals[n - 1] += len(h) - n + 1
    if c == 0 or matches[0] == 0:
        return 0.0
    logs = [math.log(Fraction(matches[0], totals[0]))]
    logs += [math.log(Fraction(matches[k] + 1, totals[k] + 1)) for k in range(1, 4)]
    bp = 0.0 if c > r else 1.0 - r / c
    return math.exp(bp + math.fsum(logs) / 4)


def mutate(rng, ref):
    out = list(ref)
    for _ in range(rng.randint(0, 4)):
        op = rng.random()
        if op < 0.4 and out:
            out[rng.randrange(len(out))] = rng.choice(VOCAB)
        elif op < 0.7 and len(out) > 4:
            del out[rng.randrange(len(out))]
        else:
            out.insert(rng.randrange(len(out) + 1), rng.choice(VOCAB))
    return out


def main():
    rng = random.Random(4_2023)
    pairs = []
    while len(pairs) < 50:
        ref = [rng.choice(VOCAB) for _ in range(rng.randint(5, 30))]
        hyp = mutate(rng, ref)
        if len(hyp) >= 4:
            pairs.append((hyp, ref))
    hyps = [h for h, _ in pairs]
    refs = [r for _, r in pairs]
    nltk_value = corpus_bleu([[r] for r in refs], hyps,
                             smoothing_function=SmoothingFunction().method2)
    own = pooled_bleu(hyps, refs)
    if abs(nltk_value - own) > 1e-12:
        sys.exit(f"oracles disagree: nltk {nltk_value} vs pooled {own}")

    edge_cases = []
    short = [
        ("short hypotheses", [["x"], ["return", "x"], ["x", "=", "1", ";"]],
         [["x", ";"], ["return", "x", ";"], ["x", "=", "1", ";"]]),
        ("longer than reference", [["x", "=", "x", "+", "1", "+", "1", ";"]],
         [["x", "=", "x", "+", "1", ";"]]),
        ("no unigram match", [["a", "b", "c", "d"]], [["w", "x", "y", "z"]]),
        ("one empty hypothesis", [[], ["int", "x", "=", "0", ";"]],
         [["return", ";"], ["int", "x", "=", "0", ";"]]),
    ]
    for name, h, r in short:
        edge_cases.append({"name": name, "hypotheses": h, "references": r,
                           "bleu": pooled_bleu(h, r)})

    out = {
        "pairs": [{"hypothesis": h, "reference": r} for h, r in pairs],
        "bleu": nltk_value,
        "edge_cases": edge_cases,
    }
    path = Path(__file__).resolve().parent.parent / "fixtures" / "bleu_fixture.json"
    path.write_text(json.dumps(out, indent=1) + "\n")
    print(f"wrote {path}: corpus BLEU {nltk_value!r}")


if __name__ == "__main__":
    main()
