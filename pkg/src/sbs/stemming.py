"""Rule-based stemming.

Ships the classic English suffix-stripping rule set (Porter's algorithm) and
supports loading simple suffix-replacement rule files for other languages.
Every stemmer here is driven to a fixed point, so ``stem(stem(x)) == stem(x)``
holds by construction; for the handful of English words where a single rule
pass is not idempotent this deliberately re-applies the rules once more.
"""

from __future__ import annotations

import json
from functools import lru_cache

_VOWELS = "aeiou"


def _is_consonant(word, i):
    ch = word[i]
    if ch in _VOWELS:
        return False
    if ch == "y":
        # y counts as a vowel when it follows a consonant ("syzygy").
        return i == 0 or not _is_consonant(word, i - 1)
    return True


def _measure(stem):
    """Number of vowel-consonant sequences in [C](VC)^m[V]."""
    m = 0
    prev_vowel = False
    for i in range(len(stem)):
        vowel = not _is_consonant(stem, i)
        if prev_vowel and not vowel:
            m += 1
        prev_vowel = vowel
    return m


def _contains_vowel(stem):
    return any(not _is_consonant(stem, i) for i in range(len(stem)))


def _ends_double_consonant(word):
    return len(word) >= 2 and word[-1] == word[-2] and _is_consonant(word, len(word) - 1)


def _ends_cvc(word):
    # consonant-vowel-consonant where the final consonant is not w, x or y
    if len(word) < 3:
        return False
    return (
        _is_consonant(word, len(word) - 3)
        and not _is_consonant(word, len(word) - 2)
        and _is_consonant(word, len(word) - 1)
        and word[-1] not in "wxy"
    )


def _apply_rules(word, rules, extra=None):
    """Apply the longest matching suffix rule; no fallthrough on failed condition."""
    for suffix, replacement, condition in rules:
        if word.endswith(suffix):
            stem = word[: len(word) - len(suffix)]
            if condition is None or condition(stem):
                return stem + replacement
            return word
    return word


_STEP2 = [
    (s, r, lambda stem: _measure(stem) > 0)
    for s, r in [
        ("ational", "ate"), ("ization", "ize"), ("iveness", "ive"),
        ("fulness", "ful"), ("ousness", "ous"), ("biliti", "ble"),
        ("tional", "tion"), ("alism", "al"), ("ation", "ate"),
        ("entli", "ent"), ("ousli", "ous"), ("aliti", "al"),
        ("iviti", "ive"), ("enci", "ence"), ("anci", "ance"),
        ("izer", "ize"), ("abli", "able"), ("alli", "al"),
        ("ator", "ate"), ("eli", "e"),
    ]
]

_STEP3 = [
    (s, r, lambda stem: _measure(stem) > 0)
    for s, r in [
        ("icate", "ic"), ("ative", ""), ("alize", "al"),
        ("iciti", "ic"), ("ical", "ic"), ("ful", ""), ("ness", ""),
    ]
]

_STEP4 = [
    (s, "", (lambda stem: _measure(stem) > 1 and stem[-1:] in "st") if s == "ion"
     else (lambda stem: _measure(stem) > 1))
    for s in [
        "ement", "ance", "ence", "able", "ible", "ment",
        "ant", "ent", "ion", "ism", "ate", "iti", "ous", "ive", "ize",
        "al", "er", "ic", "ou",
    ]
]


def _porter_pass(word):
    if len(word) <= 2:
        return word

    # Step 1a: plural forms
    word = _apply_rules(word, [("sses", "ss", None), ("ies", "i", None),
                               ("ss", "ss", None), ("s", "", None)])

    # Step 1b: -eed / -ed / -ing
    if word.endswith("eed"):
        if _measure(word[:-3]) > 0:
            word = word[:-1]
    else:
        removed = False
        if word.endswith("ed") and _contains_vowel(word[:-2]):
            word = word[:-2]
            removed = True
        elif word.endswith("ing") and _contains_vowel(word[:-3]):
            word = word[:-3]
            removed = True
        if removed:
            if word.endswith(("at", "bl", "iz")):
                word += "e"
            elif _ends_double_consonant(word) and word[-1] not in "lsz":
                word = word[:-1]
            elif _measure(word) == 1 and _ends_cvc(word):
                word += "e"

    # Step 1c: terminal y
    if word.endswith("y") and _contains_vowel(word[:-1]):
        word = word[:-1] + "i"

    word = _apply_rules(word, _STEP2)
    word = _apply_rules(word, _STEP3)
    word = _apply_rules(word, _STEP4)

    # Step 5a: terminal e
    if word.endswith("e"):
        stem = word[:-1]
        m = _measure(stem)
        if m > 1 or (m == 1 and not _ends_cvc(stem)):
            word = stem

    # Step 5b: -ll with m > 1
    if word.endswith("ll") and _measure(word) > 1:
        word = word[:-1]

    return word


def _fixed_point(fn, word, max_rounds=8):
    for _ in range(max_rounds):
        out = fn(word)
        if out == word:
            return out
        word = out
    return word


@lru_cache(maxsize=262144)
def porter_stem(token):
    """English suffix-stripping stem of a lowercase alphabetic token."""
    return _fixed_point(_porter_pass, token)


class SuffixRuleStemmer:
    """Stemmer from a JSON rules file.

    File format: ``{"language": str, "min_word_length": int, "rules":
    [[suffix, replacement], ...]}``. Per pass, the longest matching suffix is
    replaced; passes repeat until the token stops changing.
    """

    def __init__(self, language, rules, min_word_length=3):
        self.language = language
        self.min_word_length = int(min_word_length)
        self.rules = sorted(
            ((str(s), str(r)) for s, r in rules), key=lambda sr: len(sr[0]), reverse=True
        )
        for suffix, replacement in self.rules:
            if not suffix or len(replacement) >= len(suffix):
                raise ValueError(f"rule {suffix!r}->{replacement!r} must shorten the token")

    @classmethod
    def from_file(cls, path):
        with open(path, encoding="utf-8") as fh:
            spec = json.load(fh)
        return cls(
            language=spec.get("language", "custom"),
            rules=[tuple(r) for r in spec["rules"]],
            min_word_length=spec.get("min_word_length", 3),
        )

    def _pass(self, token):
        if len(token) < self.min_word_length:
            return token
        for suffix, replacement in self.rules:
            if token.endswith(suffix) and len(token) - len(suffix) + len(replacement) >= 2:
                return token[: len(token) - len(suffix)] + replacement
        return token

    def __call__(self, token):
        return _fixed_point(self._pass, token)


def get_stemmer(name):
    """Resolve a stemmer spec: "none", "english", or a path to a rules file."""
    if name in (None, "none"):
        return lambda token: token
    if name == "english":
        return porter_stem
    if str(name).endswith(".json"):
        return SuffixRuleStemmer.from_file(name)
    raise ValueError(f"unsupported stemmer: {name!r} (expected 'none', 'english' or a .json rules file)")


def stem(token, language="english"):
    """Stem one token. Deterministic and idempotent: stem(stem(x)) == stem(x)."""
    return get_stemmer(language)(token)
