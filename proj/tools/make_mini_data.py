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
"""Writes the bundled mini corpus under data/mini.

    python3 tools/make_mini_data.py data/mini

Outputs corpus.jsonl (1000 text2code samples), embeddings.jsonl (32-dim
vectors around 5 centres) and self_predictions.jsonl (the test targets with
synthetic token log-probabilities). Each default text2code syntax element
covers about 3% of the train targets and appears in the test set, and every
default complexity range has test samples inside its token-size interval.
"""

import json
import pathlib
import re
import sys

import numpy as np

SEED = 20240417
N_TRAIN, N_VALID, N_TEST = 800, 100, 100
DIM, CENTRES = 32, 5
PRESET_RANGES = [(0, 3), (24, 27), (48, 51), (72, 75), (97, 100)]

# Statements without any default text2code element.
PLAIN = [
    "int {a} = {b} + {n};",
    "{a} = {b} * {n};",
    "return {a};",
    "{f}({a}, {b});",
    "String {a} = \"{w}\";",
    "if ({a} > {b}) {{ {a} = {b}; }}",
    "{a} += {n};",
    "int {a} = {f}({b});",
]

# One statement per element kind of the text2code preset.
ELEMENT = {
    "else": "if ({a} > {n}) {{ {b} = {a}; }} else {{ {b} = {n}; }}",
    "floating_point_type": "double {a} = {b} * {n};",
    "unary_expression": "{a} = -{b};",
    "array_access": "{a} = {b}[{n}];",
    "true": "{a} = true;",
}

NAMES = ["x", "y", "z", "count", "total", "value", "item", "size", "left", "right", "idx", "acc"]
FUNCS = ["update", "process", "emit", "check", "store", "log"]
WORDS = ["ok", "done", "name", "key", "path"]

TOKEN = re.compile(r'"[^"]*"|[A-Za-z_][A-Za-z0-9_]*|\d+|\+=|[-+*=<>(){}\[\];,.]')


def fill(template, rng):
    return template.format(
        a=rng.choice(NAMES), b=rng.choice(NAMES), n=int(rng.integers(0, 100)),
        f=rng.choice(FUNCS), w=rng.choice(WORDS))


def method(statements, rng):
    return "void " + rng.choice(FUNCS) + "() { " + " ".join(statements) + " }"


def token_size(code):
    return len(TOKEN.findall(code))


def build(rng):
    total = N_TRAIN + N_VALID + N_TEST
    lengths = rng.integers(1, 31, size=total)
    plans = [[fill(rng.choice(PLAIN), rng) for _ in range(int(k))] for k in lengths]
    train = list(range(N_TRAIN))
    test = list(range(N_TRAIN + N_VALID, total))
    per_train = round(0.03 * N_TRAIN)
    for name, template in ELEMENT.items():
        hosts = list(rng.choice(train, size=per_train, replace=False))
        hosts += list(rng.choice(test, size=5, replace=False))
        for i in hosts:
            plans[int(i)].insert(int(rng.integers(0, len(plans[int(i)]) + 1)), fill(template, rng))
    targets = [method(p, rng) for p in plans]

    # Test samples sized like the train samples inside every preset range:
    # the train sample at the middle rank of the range is re-rendered with
    # fresh names and literals, which keeps its token count.
    sizes = [token_size(t) for t in targets[:N_TRAIN]]
    order = sorted(train, key=lambda i: sizes[i])
    slots = iter(test[-2 * len(PRESET_RANGES):])
    for lo, hi in PRESET_RANGES:
        ranks = range(lo * N_TRAIN // 100, hi * N_TRAIN // 100)
        for rank in (ranks[0], ranks[-1]):
            src = targets[order[rank]]
            slot = next(slots)
            targets[slot] = rerender(src, rng)
    return targets


def rerender(code, rng):
    def swap(m):
        tok = m.group(0)
        if tok in NAMES:
            return rng.choice(NAMES)
        if tok.isdigit():
            return str(int(rng.integers(0, 100)))
        return tok
    return re.sub(r"[A-Za-z_][A-Za-z0-9_]*|\d+", swap, code)


def describe(code):
    return "write a method that " + " ".join(TOKEN.findall(code)[1:6]).lower()


def main():
    out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "data/mini")
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(SEED)
    targets = build(rng)
    parts = ["train"] * N_TRAIN + ["valid"] * N_VALID + ["test"] * N_TEST
    ids = ["m%04d" % i for i in range(len(targets))]
    with open(out / "corpus.jsonl", "w") as f:
        for i, (part, target) in enumerate(zip(parts, targets)):
            rec = {"id": ids[i], "partition": part, "input": describe(target), "target": target}
            f.write(json.dumps(rec) + "\n")

    centres = rng.normal(0.0, 4.0, size=(CENTRES, DIM))
    with open(out / "embeddings.jsonl", "w") as f:
        for i, sid in enumerate(ids):
            vec = centres[i % CENTRES] + rng.normal(0.0, 0.5, size=DIM)
            f.write(json.dumps({"id": sid, "vec": [round(float(v), 6) for v in vec]}) + "\n")

    with open(out / "self_predictions.jsonl", "w") as f:
        for sid, part, target in zip(ids, parts, targets):
            if part != "test":
                continue
            n = token_size(target)
            lp = [round(float(v), 6) for v in -rng.gamma(1.5, 0.2, size=n)]
            f.write(json.dumps({"id": sid, "prediction": target, "token_logprobs": lp}) + "\n")


if __name__ == "__main__":
    main()
