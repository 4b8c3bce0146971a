"""Labeled obfuscated-sentence generation from a clean corpus.

A sentence passes four gates in fixed order -- token-count length, first
noun exists, first noun is in the frequency list and has a noun hypernym,
language is English -- and then its first noun is replaced by the word with
the next higher corpus frequency.  Every outcome is a SubstitutionRecord;
failures carry the name of the gate that rejected them instead of raising.

The frequency list and hypernym oracle are user-supplied data files (large
corpus word lists are licensed and cannot ship with the package).  Language
detection is pluggable; the bundled detector scores character trigrams
against an embedded English profile.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Iterator, Sequence

from .text_pipeline import Token, Tagger, pos_tag, tokenize

DEFAULT_LENGTH_BOUNDS = (5, 15)

SKIP_LENGTH = "length"
SKIP_FIRST_NOUN = "first_noun"
SKIP_FREQUENCY_LIST = "frequency_list"
SKIP_HYPERNYM = "hypernym"
SKIP_LANGUAGE = "language"
SKIP_NO_CANDIDATE = "no_candidate"


class NotInListError(KeyError):
    """Word is absent from the frequency list."""


class NoCandidateError(ValueError):
    """Frequency list has no other entry to substitute with."""


class FrequencyList:
    """Word -> corpus frequency map with a (frequency, word) sorted view."""

    def __init__(self, entries: dict[str, int]):
        for word, freq in entries.items():
            if freq <= 0:
                raise ValueError(f"non-positive frequency for {word!r}: {freq}")
        self._entries = {w.lower(): f for w, f in entries.items()}
        self._sorted = sorted(self._entries.items(), key=lambda kv: (kv[1], kv[0]))
        self._rank = {w: i for i, (w, _) in enumerate(self._sorted)}

    @classmethod
    def from_tsv(cls, path: str | Path) -> "FrequencyList":
        """Load ``word<TAB>frequency`` lines; '#' comments and blanks skipped."""
        entries: dict[str, int] = {}
        for raw in Path(path).read_text(encoding="utf-8").splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            word, _, freq = line.partition("\t")
            entries[word.strip().lower()] = int(freq.strip())
        return cls(entries)

    def __contains__(self, word: str) -> bool:
        return word.lower() in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def frequency(self, word: str) -> int:
        try:
            return self._entries[word.lower()]
        except KeyError:
            raise NotInListError(word) from None

    def sorted_view(self) -> list[tuple[str, int]]:
        return list(self._sorted)

    def next_higher_frequency_term(self, nf: str) -> str:
        """The replacement term for ``nf`` under the frequency-step rule.

        Rules, in order: if other words share nf's frequency, take the
        alphabetically next one among them; otherwise take the
        alphabetically first word at the smallest strictly higher
        frequency; if nf holds the maximum frequency, fall back to the
        entry immediately before it in the sorted view.  Never returns nf.
        """
        word = nf.lower()
        freq = self.frequency(word)
        if len(self._entries) < 2:
            raise NoCandidateError("frequency list has no alternative entry")
        peers = sorted(w for w, f in self._entries.items() if f == freq)
        idx = peers.index(word)
        if idx + 1 < len(peers):
            return peers[idx + 1]
        higher = [(f, w) for w, f in self._entries.items() if f > freq]
        if higher:
            return min(higher)[1]
        return self._sorted[self._rank[word] - 1][0]


class HypernymOracle:
    """File-backed set of words known to have a noun hypernym.

    Lookups are pure; a missing word simply reports False.
    """

    def __init__(self, words: Iterable[str]):
        self._words = frozenset(w.strip().lower() for w in words if w.strip())

    @classmethod
    def from_file(cls, path: str | Path) -> "HypernymOracle":
        lines = Path(path).read_text(encoding="utf-8").splitlines()
        return cls(w.split("#", 1)[0] for w in lines)

    def has(self, word: str) -> bool:
        return word.lower() in self._words

    def __len__(self) -> int:
        return len(self._words)


# --- language detection -----------------------------------------------------

LanguageDetector = Callable[[str], str]

# Seed vocabulary for the English trigram profile: high-frequency function
# and content words. The profile is the set of padded character trigrams.
_ENGLISH_SEED = """
the of and a to in is you that it he was for on are as with his they I at be
this have from or one had by word but not what all were we when your can said
there use an each which she do how their if will up other about out many then
them these so some her would make like him into time has look two more write
go see number no way could people my than first water been call who oil its
now find long down day did get come made may part over new sound take only
little work know place year live me back give most very after thing our just
name good sentence man think say great where help through much before line
right too mean old any same tell boy follow came want show also around form
three small set put end does another well large must big even such because
turn here why ask went men read need land different home us move try kind
hand picture again change off play spell air away animal house point page
letter mother answer found study still learn should america world high every
near add food between own below country plant last school father keep tree
never start city earth eye light thought head under story saw left dont few
while along might close something seem next hard open example begin life
always those both paper together got group often run important until children
side feet car mile night walk white sea began grow took river four carry
state once book hear stop without second later miss idea enough eat face
watch far real almost let above girl sometimes mountain cut young talk soon
list song being leave family body music color stand sun question fish area
mark dog horse birds problem complete room knew since ever piece told usually
friends easy heard order red door sure become top ship across today during
short better best however low hours black products happened whole measure
remember early waves reached listen wind rock space covered fast several hold
himself toward five step morning passed vowel true hundred against pattern
numeral table north slowly money map farm pulled draw voice seen cold cried
plan notice south sing war ground fall king town unit figure certain field
travel wood fire upon done english road half ten fly gave box finally wait
correct oh quickly person became shown minutes strong verb stars front feel
fact inches street decided contain course surface produce building ocean
class note nothing rest carefully scientists inside wheels stay green known
island week less machine base ago stood plane system behind ran round boat
game force brought understand warm common bring explain dry though language
shape deep thousands yes clear equation yet government filled heat full hot
check object am rule among noun power cannot able six size dark ball material
special heavy fine pair circle include built position bomb attack airport
flower president deliver shoot pen blood paper tree branch office mail letter
report message information security agency term sentence detect expect
"""

_TRIGRAM_MIN_LETTERS = 3
_TRIGRAM_THRESHOLD = 0.62

_WORD_LETTERS = re.compile(r"[a-z]+")


def _padded_trigrams(text: str) -> list[str]:
    grams: list[str] = []
    for word in _WORD_LETTERS.findall(text.lower()):
        padded = f" {word} "
        grams.extend(padded[i : i + 3] for i in range(len(padded) - 2))
    return grams


_ENGLISH_PROFILE = frozenset(_padded_trigrams(_ENGLISH_SEED))


def detect_language(sentence: str, threshold: float = _TRIGRAM_THRESHOLD) -> str:
    """Classify a sentence as ``en`` or ``other`` by trigram overlap.

    The score is the fraction of the sentence's padded character trigrams
    present in the embedded English profile; non-Latin letters never match,
    so accented or non-Latin text scores low.  Degenerate inputs (fewer
    than three letters) report ``other``.
    """
    letters = sum(ch.isalpha() for ch in sentence)
    if letters < _TRIGRAM_MIN_LETTERS:
        return "other"
    grams = _padded_trigrams(sentence)
    if not grams:
        return "other"
    hits = sum(g in _ENGLISH_PROFILE for g in grams)
    return "en" if hits / len(grams) >= threshold else "other"


# --- substitution -----------------------------------------------------------

@dataclass(frozen=True)
class SubstitutionRecord:
    """Outcome of one substitution attempt.

    When ``skip_reason`` is None the substitution succeeded and
    ``substituted`` differs from ``original`` in exactly the first
    occurrence of ``nf``.
    """

    original: str
    substituted: str | None
    nf: str | None
    nf_prime: str | None
    freq_nf: int | None
    freq_nf_prime: int | None
    skip_reason: str | None = None

    @property
    def is_substituted(self) -> bool:
        return self.skip_reason is None

    def to_json_dict(self) -> dict:
        return {
            "original": self.original,
            "substituted": self.substituted,
            "nf": self.nf,
            "nf_prime": self.nf_prime,
            "freq_nf": self.freq_nf,
            "freq_nf_prime": self.freq_nf_prime,
            **({"skip_reason": self.skip_reason} if self.skip_reason else {}),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), ensure_ascii=False)


def first_noun(tagged: Sequence[Token]) -> Token | None:
    """First token whose tag is NN-class (NN, NNS, NNP, NNPS), if any."""
    for token in tagged:
        if token.tag and token.tag.startswith("NN"):
            return token
    return None


def _match_case(replacement: str, original: str) -> str:
    if original.isupper() and len(original) > 1:
        return replacement.upper()
    if original[:1].isupper():
        return replacement[:1].upper() + replacement[1:]
    return replacement


def replace_first(sentence: str, target: str, replacement: str) -> str:
    """Replace the first whole-word occurrence of target, case-insensitively.

    The replacement inherits the capitalization pattern of the matched
    text; later occurrences are untouched.
    """
    pattern = re.compile(rf"\b{re.escape(target)}\b", re.IGNORECASE)
    return pattern.sub(lambda m: _match_case(replacement, m.group(0)), sentence, count=1)


def _skip(sentence: str, reason: str, nf: str | None = None) -> SubstitutionRecord:
    return SubstitutionRecord(
        original=sentence,
        substituted=None,
        nf=nf,
        nf_prime=None,
        freq_nf=None,
        freq_nf_prime=None,
        skip_reason=reason,
    )


def substitute_sentence(
    sentence: str,
    frequency_list: FrequencyList,
    hypernyms: HypernymOracle,
    lang_detector: LanguageDetector | None = None,
    length_bounds: tuple[int, int] | None = DEFAULT_LENGTH_BOUNDS,
    pretagged: Sequence[Token] | None = None,
    tagger: Tagger | None = None,
) -> SubstitutionRecord:
    """Run the gated first-noun substitution on one sentence.

    Gates apply in order (length, first noun, frequency list, hypernym,
    language) and the first failing gate names the skip_reason.  Pass
    ``pretagged`` tokens to bypass the bundled tagger, ``length_bounds=None``
    to disable the length gate, and ``lang_detector`` to override the
    bundled trigram detector.
    """
    detector = lang_detector if lang_detector is not None else detect_language
    tokens = list(pretagged) if pretagged is not None else pos_tag(tokenize(sentence), tagger)
    if length_bounds is not None:
        low, high = length_bounds
        if not low <= len(tokens) <= high:
            return _skip(sentence, SKIP_LENGTH)
    noun = first_noun(tokens)
    if noun is None:
        return _skip(sentence, SKIP_FIRST_NOUN)
    nf = noun.surface
    if nf not in frequency_list:
        return _skip(sentence, SKIP_FREQUENCY_LIST, nf=nf)
    if not hypernyms.has(nf):
        return _skip(sentence, SKIP_HYPERNYM, nf=nf)
    if detector(sentence) != "en":
        return _skip(sentence, SKIP_LANGUAGE, nf=nf)
    try:
        nf_prime = frequency_list.next_higher_frequency_term(nf)
    except NoCandidateError:
        return _skip(sentence, SKIP_NO_CANDIDATE, nf=nf)
    return SubstitutionRecord(
        original=sentence,
        substituted=replace_first(sentence, nf, nf_prime),
        nf=nf,
        nf_prime=nf_prime,
        freq_nf=frequency_list.frequency(nf),
        freq_nf_prime=frequency_list.frequency(nf_prime),
    )


def substitute_corpus(
    sentences: Iterable[str],
    frequency_list: FrequencyList,
    hypernyms: HypernymOracle,
    lang_detector: LanguageDetector | None = None,
    length_bounds: tuple[int, int] | None = DEFAULT_LENGTH_BOUNDS,
    tagger: Tagger | None = None,
) -> Iterator[SubstitutionRecord]:
    """Substitute a corpus line by line, preserving input order."""
    for sentence in sentences:
        yield substitute_sentence(
            sentence.rstrip("\n"),
            frequency_list,
            hypernyms,
            lang_detector=lang_detector,
            length_bounds=length_bounds,
            tagger=tagger,
        )
