#!/usr/bin/env python3
"""Reference encoder written against numpy only.

Reads a codebook JSON, a GloVe-format embedding file and an annotation TSV and
writes the expected composite keys, component counts and compressed vectors as
JSON. Circular convolution is done twice (numpy FFT and an O(n^2) loop) and
the two are required to agree before anything is written.

    python3 tools/oracles/encode_oracle.py CODEBOOK EMBEDDINGS ANNOTATIONS OUT
"""
import json
import sys

import numpy as np


def conv_fft(a, b):
    return np.fft.irfft(np.fft.rfft(a) * np.fft.rfft(b), n=len(a))


def conv_loop(a, b):
    n = len(a)
    return np.array([sum(a[k] * b[(j - k) % n] for k in range(n)) for j in range(n)])


def main():
    cb_path, emb_path, ann_path, out_path = sys.argv[1:5]
    cb = json.load(open(cb_path))
    vec = {k: np.array(v, dtype=float) for k, v in cb["vectors"].items()}
    emb = {}
    for line in open(emb_path):
        parts = line.rstrip("\n").split(" ")
        if len(parts) > 1:
            emb.setdefault(parts[0], np.array([float(x) for x in parts[1:]]))

    out = {}
    for line in open(ann_path):
        line = line.rstrip("\n")
        if not line:
            continue
        surface, pos, ner = line.split("\t")
        key = surface.lower() + pos + ("" if ner == "-" else ner)
        if key in out:
            continue
        filler = emb.get(surface, emb.get(surface.lower(), vec["unknown"]))
        pairs = [(vec["slot/TOK"], filler), (vec["slot/POS"], vec["pos/" + pos])]
        if ner != "-":
            pairs.append((vec["slot/ENT"], vec["ner/" + ner]))
        terms = [vec["frame"]]
        for a, b in pairs:
            fast, slow = conv_fft(a, b), conv_loop(a, b)
            assert np.max(np.abs(fast - slow)) < 1e-12
            terms.append(fast)
        m = len(terms)
        out[key] = {"component_count": m, "vector": list(np.sum(terms, axis=0) / m)}

    with open(out_path, "w") as f:
        json.dump(out, f, indent=1)
        f.write("\n")


if __name__ == "__main__":
    main()
