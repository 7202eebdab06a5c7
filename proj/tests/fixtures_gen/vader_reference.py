"""Reference lexicon-and-rules sentiment scorer.

Straight transcription of the published VADER rule set (boosters, negation,
ALL-CAPS emphasis, "but" re-weighting, special-case idioms, punctuation
amplification, alpha-15 normalization), kept independent of the C++
implementation so golden fixtures have an oracle to come from.
"""
import math
import string

B_INCR = 0.293
B_DECR = -0.293
C_INCR = 0.733
N_SCALAR = -0.74

NEGATE = {
    "aint", "arent", "cannot", "cant", "couldnt", "darent", "didnt", "doesnt",
    "ain't", "aren't", "can't", "couldn't", "daren't", "didn't", "doesn't",
    "dont", "hadnt", "hasnt", "havent", "isnt", "mightnt", "mustnt", "neither",
    "don't", "hadn't", "hasn't", "haven't", "isn't", "mightn't", "mustn't",
    "neednt", "needn't", "never", "none", "nope", "nor", "not", "nothing",
    "nowhere", "oughtnt", "shant", "shouldnt", "uhuh", "wasnt", "werent",
    "oughtn't", "shan't", "shouldn't", "uh-uh", "wasn't", "weren't", "without",
    "wont", "wouldnt", "won't", "wouldn't", "rarely", "seldom", "despite"}

BOOSTER_DICT = {
    "absolutely": B_INCR, "amazingly": B_INCR, "awfully": B_INCR,
    "completely": B_INCR, "considerable": B_INCR, "considerably": B_INCR,
    "decidedly": B_INCR, "deeply": B_INCR, "effing": B_INCR,
    "enormous": B_INCR, "enormously": B_INCR, "entirely": B_INCR,
    "especially": B_INCR, "exceptional": B_INCR, "exceptionally": B_INCR,
    "extreme": B_INCR, "extremely": B_INCR, "fabulously": B_INCR,
    "flipping": B_INCR, "flippin": B_INCR, "frackin": B_INCR,
    "fracking": B_INCR, "fricking": B_INCR, "frickin": B_INCR,
    "frigging": B_INCR, "friggin": B_INCR, "fully": B_INCR, "fuckin": B_INCR,
    "fucking": B_INCR, "fuggin": B_INCR, "fugging": B_INCR, "greatly": B_INCR,
    "hella": B_INCR, "highly": B_INCR, "hugely": B_INCR, "incredible": B_INCR,
    "incredibly": B_INCR, "intensely": B_INCR, "major": B_INCR,
    "majorly": B_INCR, "more": B_INCR, "most": B_INCR, "particularly": B_INCR,
    "purely": B_INCR, "quite": B_INCR, "really": B_INCR, "remarkably": B_INCR,
    "so": B_INCR, "substantially": B_INCR, "thoroughly": B_INCR,
    "total": B_INCR, "totally": B_INCR, "tremendous": B_INCR,
    "tremendously": B_INCR, "uber": B_INCR, "unbelievably": B_INCR,
    "unusually": B_INCR, "utter": B_INCR, "utterly": B_INCR, "very": B_INCR,
    "almost": B_DECR, "barely": B_DECR, "hardly": B_DECR,
    "just enough": B_DECR, "kind of": B_DECR, "kinda": B_DECR,
    "kindof": B_DECR, "kind-of": B_DECR, "less": B_DECR, "little": B_DECR,
    "marginal": B_DECR, "marginally": B_DECR, "occasional": B_DECR,
    "occasionally": B_DECR, "partly": B_DECR, "scarce": B_DECR,
    "scarcely": B_DECR, "slight": B_DECR, "slightly": B_DECR,
    "somewhat": B_DECR, "sort of": B_DECR, "sorta": B_DECR, "sortof": B_DECR,
    "sort-of": B_DECR}

SPECIAL_CASES = {
    "the shit": 3, "the bomb": 3, "bad ass": 1.5, "badass": 1.5,
    "bus stop": 0.0, "yeah right": -2, "kiss of death": -1.5, "to die for": 3,
    "beating heart": 3.1, "broken heart": -2.9}


def negated(word_lower):
    return word_lower in NEGATE or "n't" in word_lower


def normalize(score, alpha=15):
    norm = score / math.sqrt(score * score + alpha)
    return max(-1.0, min(1.0, norm))


def allcap_differential(words):
    allcaps = sum(1 for w in words if w.isupper())
    diff = len(words) - allcaps
    return 0 < diff < len(words)


def scalar_inc_dec(word, valence, is_cap_diff):
    scalar = 0.0
    wl = word.lower()
    if wl in BOOSTER_DICT:
        scalar = BOOSTER_DICT[wl]
        if valence < 0:
            scalar *= -1
        if word.isupper() and is_cap_diff:
            scalar += C_INCR if valence > 0 else -C_INCR
    return scalar


def strip_punc_if_word(token):
    stripped = token.strip(string.punctuation)
    if len(stripped) <= 2:
        return token
    return stripped


def load_lexicon(path):
    lexicon = {}
    with open(path, encoding="utf-8") as f:
        for line in f:
            if not line.strip() or line.startswith("#"):
                continue
            token, measure = line.split("\t")[0:2]
            lexicon[token.lower()] = float(measure)
    return lexicon


class ReferenceScorer:
    def __init__(self, lexicon_path):
        self.lexicon = load_lexicon(lexicon_path)

    def compound(self, text):
        words = [strip_punc_if_word(t) for t in text.split()]
        words_lower = [w.lower() for w in words]
        is_cap_diff = allcap_differential(words)

        sentiments = []
        for i, item in enumerate(words):
            if words_lower[i] in BOOSTER_DICT:
                sentiments.append(0.0)
                continue
            if (i < len(words) - 1 and words_lower[i] == "kind"
                    and words_lower[i + 1] == "of"):
                sentiments.append(0.0)
                continue
            sentiments.append(
                self._valence(words, words_lower, is_cap_diff, i))

        self._but_check(words_lower, sentiments)

        if not sentiments:
            return 0.0
        total = 0.0
        for s in sentiments:
            total += s
        punct = self._punctuation_emphasis(text)
        if total > 0:
            total += punct
        elif total < 0:
            total -= punct
        return round(normalize(total), 4)

    def _valence(self, words, w, is_cap_diff, i):
        item = words[i]
        il = w[i]
        if il not in self.lexicon:
            return 0.0
        valence = self.lexicon[il]
        if il == "no" and i != len(w) - 1 and w[i + 1] in self.lexicon:
            valence = 0.0
        if ((i > 0 and w[i - 1] == "no")
                or (i > 1 and w[i - 2] == "no")
                or (i > 2 and w[i - 3] == "no" and w[i - 1] in ("or", "nor"))):
            valence = self.lexicon[il] * N_SCALAR
        if item.isupper() and is_cap_diff:
            valence += C_INCR if valence > 0 else -C_INCR
        for start in range(3):
            if i > start and w[i - (start + 1)] not in self.lexicon:
                s = scalar_inc_dec(words[i - (start + 1)], valence, is_cap_diff)
                if start == 1 and s != 0:
                    s *= 0.95
                if start == 2 and s != 0:
                    s *= 0.9
                valence += s
                valence = self._negation_check(valence, w, start, i)
                if start == 2:
                    valence = self._special_idioms_check(valence, w, i)
        return self._least_check(valence, w, i)

    def _negation_check(self, valence, w, start, i):
        if start == 0:
            if negated(w[i - 1]):
                valence *= N_SCALAR
        if start == 1:
            if w[i - 2] == "never" and w[i - 1] in ("so", "this"):
                valence *= 1.25
            elif w[i - 2] == "without" and w[i - 1] == "doubt":
                pass
            elif negated(w[i - 2]):
                valence *= N_SCALAR
        if start == 2:
            if (w[i - 3] == "never" and w[i - 2] in ("so", "this")) \
                    or w[i - 1] in ("so", "this"):
                valence *= 1.25
            elif w[i - 3] == "without" and (w[i - 2] == "doubt"
                                            or w[i - 1] == "doubt"):
                pass
            elif negated(w[i - 3]):
                valence *= N_SCALAR
        return valence

    @staticmethod
    def _special_idioms_check(valence, w, i):
        onezero = f"{w[i-1]} {w[i]}"
        twoonezero = f"{w[i-2]} {w[i-1]} {w[i]}"
        twoone = f"{w[i-2]} {w[i-1]}"
        threetwoone = f"{w[i-3]} {w[i-2]} {w[i-1]}"
        threetwo = f"{w[i-3]} {w[i-2]}"
        for seq in (onezero, twoonezero, twoone, threetwoone, threetwo):
            if seq in SPECIAL_CASES:
                valence = SPECIAL_CASES[seq]
                break
        if len(w) - 1 > i:
            zeroone = f"{w[i]} {w[i+1]}"
            if zeroone in SPECIAL_CASES:
                valence = SPECIAL_CASES[zeroone]
        if len(w) - 1 > i + 1:
            zeroonetwo = f"{w[i]} {w[i+1]} {w[i+2]}"
            if zeroonetwo in SPECIAL_CASES:
                valence = SPECIAL_CASES[zeroonetwo]
        for gram in (threetwoone, threetwo, twoone):
            if gram in BOOSTER_DICT:
                valence += BOOSTER_DICT[gram]
        return valence

    def _least_check(self, valence, w, i):
        if i > 1 and w[i - 1] not in self.lexicon and w[i - 1] == "least":
            if w[i - 2] != "at" and w[i - 2] != "very":
                valence *= N_SCALAR
        elif i > 0 and w[i - 1] not in self.lexicon and w[i - 1] == "least":
            valence *= N_SCALAR
        return valence

    @staticmethod
    def _but_check(words_lower, sentiments):
        if "but" not in words_lower:
            return
        bi = words_lower.index("but")
        for pos in range(len(sentiments)):
            sentiment = sentiments[pos]
            si = sentiments.index(sentiment)
            if si < bi:
                sentiments[si] = sentiment * 0.5
            elif si > bi:
                sentiments[si] = sentiment * 1.5

    @staticmethod
    def _punctuation_emphasis(text):
        ep = min(text.count("!"), 4)
        amp = ep * 0.292
        qm = text.count("?")
        if qm > 1:
            amp += qm * 0.18 if qm <= 3 else 0.96
        return amp
