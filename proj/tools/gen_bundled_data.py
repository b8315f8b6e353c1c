#!/usr/bin/env python3
# Copyright 2026 The langassess Authors. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the data files bundled into the core library.

Writes core/data/{tag_lexicon.tsv, topic_vocab.tsv, embeddings_d25.txt,
word_counts.txt}. Output is deterministic; rerun after editing the word
lists below and commit the results.
"""
import pathlib

import numpy as np

DATA = pathlib.Path(__file__).resolve().parent.parent / "core" / "data"

CLOSED = {
    "PRP1": "i me my mine myself we us our ours ourselves i'm i've i'd i'll we're we've",
    "PRP3": ("he him his himself she her hers herself it its itself they them their theirs "
             "themselves he's she's it's they're they've"),
    "PRP": ("you your yours yourself yourselves you're you've someone something anything "
            "everything nothing somebody anybody everybody nobody anyone everyone"),
    "SUB": "because although though while whereas if unless whenever wherever whether when where until",
    "CC": "and but or nor yet so",
    "IN": ("in on at by with from to of for about into onto over under near behind beside between "
           "through during without after before since as up down off out around across against "
           "along among beyond inside outside toward towards upon within like"),
    "OTHER": ("the a an this that these those some any each every no all both there um uh yeah oh "
              "okay one two three four five six seven eight nine ten there's that's what which who "
              "whom whose how why"),
    "RB": ("very really just now then also too quite again always never often here still almost "
           "soon maybe perhaps already away back well not even only later together"),
    "VB": ("be is am are was were been being have has had do does did done can could will would "
           "shall should may might must go goes went gone get gets got see sees saw seen make "
           "makes made take takes took say says said know knows knew think thinks thought look "
           "looks looked come comes came want wants wanted give gave put let tell told don't "
           "doesn't didn't can't isn't wasn't aren't weren't won't couldn't"),
    "JJ": ("big small little old young good bad happy sad tall short long red blue green dirty "
           "clean full empty wet hot cold nice pretty sunny quiet busy open other new same "
           "different whole great funny"),
    "NN": "thing things stuff way time day people person lot kind place",
    "NNP": "john mary susan peter tom anna david linda toronto sunday monday christmas",
}

TOPICS = {
    "kitchen": {
        "NN": ("mother boy girl sink water cookie jar stool cupboard plate dish window curtain "
               "floor tap counter towel kitchen shelf lid"),
        "VB": "washes dries reaches climbs spills overflows grabs tips falls holds",
        "JJ": "wet slippery tall busy distracted hungry",
        "RB": "carefully quickly suddenly quietly",
    },
    "picnic": {
        "NN": ("family lake shore blanket book radio coffee kite dog tree boat flag sand wind "
               "basket sandwich father shade fisherman friend"),
        "VB": "reads pours flies sails waves listens swims fishes relaxes enjoys",
        "JJ": "sunny windy relaxed comfortable shallow peaceful",
        "RB": "happily slowly lazily gently",
    },
    "grandfather": {
        "NN": ("grandfather beard coat cane clock piano violin letter farm village doctor "
               "church story garden neighbour war photo hat journey voice"),
        "VB": "remembers walks plays writes visits travels whistles teaches builds sings",
        "JJ": "ancient wise strong gentle proud stubborn",
        "RB": "proudly patiently rarely loudly",
    },
    "rainbow": {
        "NN": ("rainbow sunlight raindrop sky prism colour arch legend horizon cloud storm "
               "light spectrum gold pot beam end sun rain mist"),
        "VB": "shines bends divides appears forms reflects fades glows curves splits",
        "JJ": "bright curved colourful distant golden misty",
        "RB": "brightly briefly softly slowly",
    },
    "market": {
        "NN": ("market vendor apple bread cheese fish money price stall bag basket crowd "
               "cart onion tomato coin scale shopper flower",),
        "VB": "buys sells pays weighs carries counts bargains chooses smells packs",
        "JJ": "fresh cheap expensive crowded ripe noisy",
        "RB": "cheerfully eagerly briskly finally",
    },
}


def topic_words():
    rows = []
    for topic, tags in TOPICS.items():
        for tag, words in tags.items():
            if isinstance(words, tuple):
                words = " ".join(words)
            for w in words.split():
                rows.append((topic, tag, w))
    return rows


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    lexicon = {}
    for tag, words in CLOSED.items():
        for w in words.split():
            lexicon.setdefault(w, tag)
    rows = topic_words()
    for _, tag, w in rows:
        lexicon.setdefault(w, tag)

    with open(DATA / "tag_lexicon.tsv", "w") as f:
        f.write("# word<TAB>tag; tags: NN NNP VB JJ RB IN CC PRP1 PRP3 PRP SUB OTHER\n")
        f.write("# lexicon-version 1\n")
        for w in sorted(lexicon):
            f.write(f"{w}\t{lexicon[w]}\n")

    with open(DATA / "topic_vocab.tsv", "w") as f:
        f.write("# topic<TAB>tag<TAB>word\n")
        for topic, tag, w in rows:
            f.write(f"{topic}\t{tag}\t{w}\n")

    rng = np.random.default_rng(20240611)
    dim = 25
    centroids = {t: rng.normal(size=dim) * 1.5 for t in TOPICS}
    function_centroid = rng.normal(size=dim) * 0.3
    vectors = {}
    counts = {}
    word_topic = {w: t for t, _, w in rows}
    for w in sorted(lexicon):
        if w in word_topic:
            vectors[w] = centroids[word_topic[w]] + rng.normal(size=dim) * 0.6
            counts[w] = int(rng.integers(20, 400))
        else:
            vectors[w] = function_centroid + rng.normal(size=dim) * 0.5
            counts[w] = int(rng.integers(2000, 50000))
    with open(DATA / "embeddings_d25.txt", "w") as f:
        for w in sorted(vectors):
            f.write(w + " " + " ".join(f"{x:.6f}" for x in vectors[w]) + "\n")
    with open(DATA / "word_counts.txt", "w") as f:
        for w in sorted(counts):
            f.write(f"{w} {counts[w]}\n")
    print(f"{len(lexicon)} lexicon entries, {len(rows)} topic words")


if __name__ == "__main__":
    main()
