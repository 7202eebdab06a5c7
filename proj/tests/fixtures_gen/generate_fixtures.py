#!/usr/bin/env python3
"""Generates the frozen test fixtures under tests/data/.

Statistical expectations come from scipy; sentiment expectations from the
reference rule-based scorer in vader_reference.py. Re-run only when fixture
coverage changes; outputs are committed.
"""
import json
import os
import sys

import numpy as np
from scipy import stats

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
from vader_reference import ReferenceScorer  # noqa: E402

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DATA = os.path.join(ROOT, "data")
os.makedirs(DATA, exist_ok=True)


def gen_ttest_fixtures():
    rng = np.random.default_rng(20240817)
    cases = []
    for case in range(100):
        n = int(rng.integers(2, 201))
        scale = float(rng.uniform(0.1, 5.0))
        shift = float(rng.uniform(-1.0, 1.0))
        a = rng.normal(shift, scale, n)
        b = rng.normal(0.0, scale, n)
        if np.std(a - b, ddof=1) == 0.0:
            continue
        res = stats.ttest_rel(a, b)
        cases.append({
            "a": [float(x) for x in a],
            "b": [float(x) for x in b],
            "t": float(res.statistic),
            "p": float(res.pvalue),
            "n": n,
        })
    with open(os.path.join(DATA, "ttest_fixtures.json"), "w") as f:
        json.dump(cases, f)
    print(f"ttest fixtures: {len(cases)}")


def gen_pearson_fixtures():
    rng = np.random.default_rng(20240818)
    cases = []
    for n in (3, 5, 10, 25, 50, 100, 100, 250):
        x = rng.normal(0.0, 1.0, n)
        y = 0.4 * x + rng.normal(0.0, 1.0, n)
        r, p = stats.pearsonr(x, y)
        cases.append({
            "x": [float(v) for v in x],
            "y": [float(v) for v in y],
            "r": float(r),
            "p": float(p),
            "n": int(n),
        })
    with open(os.path.join(DATA, "pearson_fixtures.json"), "w") as f:
        json.dump(cases, f)
    print(f"pearson fixtures: {len(cases)}")


SENTENCES = [
    "The person appears confident and capable.",
    "She looks very happy and friendly.",
    "He does not seem trustworthy.",
    "This is a good photo of a skilled worker.",
    "The man seems EXTREMELY competent!",
    "What a terrible, gloomy scene.",
    "I really love how warm and sincere she looks.",
    "The worker is efficient but somewhat cold.",
    "He isn't particularly intelligent.",
    "A brilliant and accomplished professional.",
    "She looks sad and tired.",
    "The uniform is clean and neat.",
    "He seems hardly capable of the task.",
    "Never so confident a person have I seen.",
    "The photo is not bad at all!",
    "An utterly miserable situation.",
    "The chef appears calm, focused, and skilled.",
    "This firefighter is incredibly brave!!!",
    "No trust remains between them.",
    "She is kind of quiet.",
    "At least he is honest.",
    "He is the least reliable member of the team.",
    "The doctor looks professional and caring.",
    "They were without doubt successful.",
    "Such a handsome, cheerful young man.",
    "The scene looks dangerous and chaotic.",
    "Is this person reliable? Is she really capable??",
    "An awful mistake ruined the whole project.",
    "The woman radiates warmth and kindness.",
    "He failed, but he remains hopeful.",
    "A GREAT performance by a talented musician.",
    "Nothing good ever happens here.",
    "The portrait shows a serene, graceful dancer.",
    "His work was sloppy and careless.",
    "barely adequate, honestly disappointing",
    "so so so good",
    "The engineer demonstrates remarkable expertise.",
    "I don't hate it.",
    "A weak and unreliable design.",
    "Absolutely wonderful news for everyone!",
    "The mechanic seems rude and hostile.",
    "Marginally better than the worst case.",
    "A trustworthy, good-natured, sincere colleague.",
    "The outcome was neither good nor fair.",
    "Most impressive results this year.",
    "An uninteresting description of a person.",
    "She handled the crisis with courage and wisdom.",
    "This is fine.",
    "Totally broken and utterly useless equipment.",
    "A pleasant, welcoming smile greets every visitor.",
]


def gen_sentiment_golden():
    scorer = ReferenceScorer(
        os.path.join(os.path.dirname(ROOT), "data", "sentiment_lexicon.txt"))
    with open(os.path.join(DATA, "sentiment_golden.tsv"), "w") as f:
        for sentence in SENTENCES:
            f.write(f"{sentence}\t{scorer.compound(sentence):.4f}\n")
    print(f"sentiment golden: {len(SENTENCES)}")


if __name__ == "__main__":
    gen_ttest_fixtures()
    gen_pearson_fixtures()
    gen_sentiment_golden()
