#!/usr/bin/env python3
"""Regenerates tests/data/wiki5k.tar.gz.

The archive holds two files:

  wiki5k.glove.txt        5,000 cased words x 300 dims, GloVe text format.
                          Count-based vectors: harmonic-weighted window-5
                          co-occurrences over the English Wikipedia and news
                          sample corpora shipped in the gensim wheel's test
                          data, positive PMI with 0.75 context smoothing, rank
                          300 truncated SVD, rows = U * sqrt(S), then one global
                          scale so the mean row norm is 5.0 (GloVe-840B vectors
                          sit in the 4-8 norm range).
  wiki5k.annotations.tsv  surface<TAB>pos<TAB>ner-or-"-" token stream drawn
                          from the same text, tagged with the Brill lexicon and
                          contextual rules (pattern3 distribution) and a small
                          gazetteer/heuristic NER pass.

Inputs (no network needed beyond the package mirror):

  pip download --no-deps gensim pattern3
  pip install gensim-*.whl   # filter_wiki only
  python3 make_wiki_fixture.py --gensim-wheel gensim-*.whl \
      --pattern3-sdist pattern3-3.0.0.tar.gz --out tests/data/wiki5k.tar.gz

The tagging is heuristic. The fixture exercises the pipeline on real
embeddings; it does not claim tagger-grade annotations.
"""

import argparse
import bz2
import collections
import io
import os
import re
import tarfile
import zipfile

ENWIKI = "gensim/test/test_data/enwiki-latest-pages-articles1.xml-p000000010p000030302-shortened.bz2"
LEE = "gensim/test/test_data/lee_background.cor"
LEXICON = "pattern3-3.0.0/pattern3/text/en/en-lexicon.txt"
CONTEXT = "pattern3-3.0.0/pattern3/text/en/en-context.txt"
ENTITIES = "pattern3-3.0.0/pattern3/text/en/en-entities.txt"

VOCAB_SIZE = 5000
CONTEXT_SIZE = 20000
DIM = 300
WINDOW = 5
MEAN_NORM = 5.0
MAX_TOKENS = 60000
MIN_KNOWN = 0.97

TOKEN_RE = re.compile(r"[A-Za-z][A-Za-z'\-]*[A-Za-z]|[A-Za-z]|\d+(?:[.,]\d+)*%?|[.,;:!?()$\"]")
SENT_END = {".", "!", "?"}
MONTHS = {"January", "February", "March", "April", "May", "June", "July", "August",
          "September", "October", "November", "December"}
TITLES = {"Mr", "Mrs", "Ms", "Dr", "President", "King", "Queen", "Prince", "Sir", "Saint",
          "General", "Senator", "Professor", "Pope", "Lord"}
ORG_WORDS = {"University", "Company", "Corporation", "Inc", "Party", "Association", "Institute",
             "Council", "Church", "Army", "Navy", "Society", "College", "Commission", "Bank",
             "Agency", "Department", "Union", "League", "Committee", "Group", "Foundation"}
NORP_WORDS = {"American", "British", "English", "French", "German", "Greek", "Roman", "Russian",
              "Chinese", "Japanese", "Christian", "Jewish", "Muslim", "Catholic", "Australian",
              "Israeli", "Palestinian", "Islamic", "Spanish", "Italian", "Soviet", "European",
              "African", "Indian", "Arab", "Egyptian", "Latin", "Dutch", "Irish", "Scottish"}
ENTITY_MAP = {"PERS": "PERSON", "LOC": "GPE", "ORG": "ORG"}


def strip_wiki(xml_text):
    from gensim.corpora.wikicorpus import filter_wiki
    texts = re.findall(r"<text[^>]*>(.*?)</text>", xml_text, flags=re.S)
    out = []
    for t in texts:
        t = t.replace("&lt;", "<").replace("&gt;", ">").replace("&amp;", "&").replace("&quot;", '"')
        t = filter_wiki(t)
        t = re.sub(r"^[=*#:;|!{].*$", "", t, flags=re.M)
        t = re.sub(r"'{2,}", "", t)
        out.append(t)
    return "\n".join(out)


def sentences(text):
    for para in text.split("\n"):
        toks = TOKEN_RE.findall(para)
        cur = []
        for tok in toks:
            cur.append(tok)
            if tok in SENT_END:
                if len(cur) > 3:
                    yield cur
                cur = []
        if len(cur) > 3:
            yield cur


def load_lexicon(text):
    lex = {}
    for line in text.splitlines():
        if line.startswith(";;;") or not line.strip():
            continue
        parts = line.split()
        if len(parts) >= 2:
            lex.setdefault(parts[0], parts[1])
    return lex


def load_rules(text):
    rules = []
    for line in text.splitlines():
        if line.startswith(";;;") or not line.strip():
            continue
        rules.append(line.split())
    return rules


def load_entities(text):
    ents = {}
    for line in text.splitlines():
        parts = line.split()
        if len(parts) >= 2 and parts[-1] in ENTITY_MAP:
            ents[tuple(parts[:-1])] = ENTITY_MAP[parts[-1]]
    return ents


def guess_tag(word, first, lex):
    if word in lex:
        return lex[word]
    if first and word.lower() in lex:
        return lex[word.lower()]
    if re.fullmatch(r"\d+(?:[.,]\d+)*", word):
        return "CD"
    if word.endswith("%"):
        return "CD"
    if word[0].isupper():
        return "NNPS" if word.endswith("s") and word[:-1] in lex else "NNP"
    if word.endswith("ing"):
        return "VBG"
    if word.endswith("ed"):
        return "VBD"
    if word.endswith("ly"):
        return "RB"
    if word.endswith("s"):
        return "NNS"
    if "-" in word or word.endswith(("able", "ible", "ous", "ful", "ive", "al")):
        return "JJ"
    return "NN"


def apply_rules(words, tags, rules):
    n = len(words)

    def t(i):
        return tags[i] if 0 <= i < n else "STAART"

    def w(i):
        return words[i] if 0 <= i < n else "STAART"

    for rule in rules:
        if len(rule) < 4:
            continue
        frm, to, tmpl, x = rule[0], rule[1], rule[2], rule[3]
        y = rule[4] if len(rule) > 4 else None
        for i in range(n):
            if tags[i] != frm:
                continue
            ok = False
            if tmpl == "PREVTAG":
                ok = t(i - 1) == x
            elif tmpl == "NEXTTAG":
                ok = t(i + 1) == x
            elif tmpl == "PREV1OR2TAG":
                ok = x in (t(i - 1), t(i - 2))
            elif tmpl == "NEXT1OR2TAG":
                ok = x in (t(i + 1), t(i + 2))
            elif tmpl == "PREV1OR2OR3TAG":
                ok = x in (t(i - 1), t(i - 2), t(i - 3))
            elif tmpl == "PREV2TAG":
                ok = t(i - 2) == x
            elif tmpl == "NEXT2TAG":
                ok = t(i + 2) == x
            elif tmpl == "SURROUNDTAG":
                ok = t(i - 1) == x and t(i + 1) == y
            elif tmpl == "PREVBIGRAM":
                ok = t(i - 2) == x and t(i - 1) == y
            elif tmpl == "NEXTBIGRAM":
                ok = t(i + 1) == x and t(i + 2) == y
            elif tmpl == "PREVWD":
                ok = w(i - 1) == x
            elif tmpl == "NEXTWD":
                ok = w(i + 1) == x
            elif tmpl == "CURWD":
                ok = w(i) == x
            elif tmpl == "PREV1OR2WD":
                ok = x in (w(i - 1), w(i - 2))
            elif tmpl == "WDPREVTAG":
                ok = t(i - 1) == x and w(i) == y
            elif tmpl == "WDNEXTTAG":
                ok = w(i) == x and t(i + 1) == y
            elif tmpl == "RBIGRAM":
                ok = w(i) == x and w(i + 1) == y
            elif tmpl == "LBIGRAM":
                ok = w(i - 1) == x and w(i) == y
            elif tmpl == "WDAND2AFT":
                ok = w(i) == x and w(i + 2) == y
            elif tmpl == "WDAND2TAGAFT":
                ok = w(i) == x and t(i + 2) == y
            elif tmpl == "WDAND2TAGBFR":
                ok = t(i - 2) == x and w(i) == y
            if ok:
                tags[i] = to
    return tags


def ptb_punctuation(words, tags):
    # The Brill lexicon tags brackets and quotes literally; the codebook uses
    # -LRB-/-RRB- and alternating ``/'' for them.
    out, opening = [], True
    for w, t in zip(words, tags):
        if w == "(":
            t = "-LRB-"
        elif w == ")":
            t = "-RRB-"
        elif w == '"':
            t = "``" if opening else "''"
            opening = not opening
        out.append(t)
    return out


def tag_ner(words, tags, ents):
    ner = ["-"] * len(words)
    i = 0
    while i < len(words):
        hit = None
        for span in (4, 3, 2, 1):
            key = tuple(words[i:i + span])
            if len(key) == span and key in ents:
                hit = (span, ents[key])
                break
        if hit:
            for j in range(i, i + hit[0]):
                ner[j] = hit[1]
            i += hit[0]
            continue
        word = words[i]
        if tags[i] == "CD":
            if re.fullmatch(r"1\d{3}|20\d{2}", word):
                ner[i] = "DATE"
            elif word.endswith("%"):
                ner[i] = "PERCENT"
            elif i > 0 and words[i - 1] == "$":
                ner[i] = "MONEY"
            else:
                ner[i] = "CARDINAL"
        elif word in MONTHS:
            ner[i] = "DATE"
        elif word in NORP_WORDS:
            ner[i] = "NORP"
        elif tags[i] in ("NNP", "NNPS") and i > 0:
            j = i
            while j < len(words) and tags[j] in ("NNP", "NNPS"):
                j += 1
            run = words[i:j]
            if words[i - 1].rstrip(".") in TITLES:
                label = "PERSON"
            elif any(r in ORG_WORDS for r in run):
                label = "ORG"
            elif len(run) == 2:
                label = "PERSON"
            else:
                label = None
            if label:
                for k in range(i, j):
                    ner[k] = label
            i = j
            continue
        i += 1
    return ner


def train_embeddings(sents):
    import numpy as np
    import scipy.sparse as sp
    import scipy.sparse.linalg as sla

    counts = collections.Counter(w for s in sents for w in s)
    vocab = [w for w, _ in counts.most_common() if TOKEN_RE.fullmatch(w)][:VOCAB_SIZE]
    row_of = {w: i for i, w in enumerate(vocab)}
    col_of = {w: i for i, (w, _) in enumerate(counts.most_common(CONTEXT_SIZE))}
    rows, cols, vals = [], [], []
    for s in sents:
        for i, w in enumerate(s):
            if w not in row_of:
                continue
            for d in range(1, WINDOW + 1):
                for j in (i - d, i + d):
                    if 0 <= j < len(s) and s[j] in col_of:
                        rows.append(row_of[w])
                        cols.append(col_of[s[j]])
                        vals.append(1.0 / d)
    cooc = sp.coo_matrix((vals, (rows, cols)), shape=(len(vocab), len(col_of))).tocsr().tocoo()
    total = cooc.data.sum()
    row_mass = np.bincount(cooc.row, weights=cooc.data, minlength=cooc.shape[0]) / total
    ctx_mass = np.bincount(cooc.col, weights=cooc.data, minlength=cooc.shape[1]) ** 0.75
    ctx_mass /= ctx_mass.sum()
    pmi = np.log(cooc.data / total / row_mass[cooc.row] / ctx_mass[cooc.col])
    keep = pmi > 0
    ppmi = sp.csr_matrix((pmi[keep], (cooc.row[keep], cooc.col[keep])), shape=cooc.shape)
    u, s, _ = sla.svds(ppmi, k=DIM, v0=np.ones(min(ppmi.shape)), random_state=0)
    order = np.argsort(-s)
    u, s = u[:, order], s[order]
    flip = np.sign(u[np.abs(u).argmax(axis=0), np.arange(DIM)])
    vecs = u * flip * np.sqrt(s)
    vecs *= MEAN_NORM / np.linalg.norm(vecs, axis=1).mean()
    return vocab, vecs


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--gensim-wheel", required=True)
    ap.add_argument("--pattern3-sdist", required=True)
    ap.add_argument("--out", required=True)
    args = ap.parse_args()

    wheel = zipfile.ZipFile(args.gensim_wheel)
    xml = bz2.decompress(wheel.read(ENWIKI)).decode("utf-8")
    text = strip_wiki(xml) + "\n" + wheel.read(LEE).decode("utf-8", "replace")
    sents = list(sentences(text))

    with tarfile.open(args.pattern3_sdist) as tf:
        lex = load_lexicon(tf.extractfile(LEXICON).read().decode("latin-1"))
        rules = load_rules(tf.extractfile(CONTEXT).read().decode("latin-1"))
        ents = load_entities(tf.extractfile(ENTITIES).read().decode("latin-1"))

    vocab, vecs = train_embeddings(sents)
    vocab_set = set(vocab)
    lower_set = {w.lower() for w in vocab}

    glove = io.StringIO()
    for word, vec in zip(vocab, vecs):
        glove.write(word + " " + " ".join("%.5g" % v for v in vec) + "\n")

    ann = io.StringIO()
    emitted = 0
    for words in sents:
        known = sum(1 for w in words if w in vocab_set or w.lower() in lower_set)
        if known < MIN_KNOWN * len(words):
            continue
        tags = [guess_tag(w, i == 0, lex) for i, w in enumerate(words)]
        tags = apply_rules(words, tags, rules)
        ner = tag_ner(words, tags, ents)
        tags = ptb_punctuation(words, tags)
        for w, p, e in zip(words, tags, ner):
            ann.write(f"{w}\t{p}\t{e}\n")
        ann.write("\n")
        emitted += len(words)
        if emitted >= MAX_TOKENS:
            break

    os.makedirs(os.path.dirname(os.path.abspath(args.out)), exist_ok=True)
    with tarfile.open(args.out, "w:gz") as tf:
        for name, body in (("wiki5k.glove.txt", glove.getvalue()),
                           ("wiki5k.annotations.tsv", ann.getvalue())):
            data = body.encode("utf-8")
            info = tarfile.TarInfo(name)
            info.size = len(data)
            info.mtime = 0
            tf.addfile(info, io.BytesIO(data))
    print(f"{len(vocab)} embeddings, {emitted} annotated tokens -> {args.out}")


if __name__ == "__main__":
    main()
