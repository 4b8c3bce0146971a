"""Sentence-to-bag-of-terms pipeline: tokenizer, tagger, lemmatizer, filters.

The detector scores the de-duplicated content lemmas of a sentence, so the
pipeline's job is to keep nouns, plain verbs, adjectives and adverbs and to
drop everything else: function words, excluded words, base-form verbs
(configurable) and inflected verb forms, which behave as auxiliaries or
modifiers rather than free-standing concepts.

Tagging is pluggable.  The bundled RuleTagger is deterministic (closed-class
lexicon plus suffix rules; unknown words default to NN) and needs no model
download; corpus runs that already have gold tags can bypass it with the
``token/TAG`` pre-tagged line format accepted by :func:`parse_pretagged`.
All tables are read-only after load, so everything here is safe to call
concurrently.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path
from typing import Iterable, Protocol, Sequence

_TOKEN_RE = re.compile(r"\w+(?:['\-]\w+)*|[^\w\s]", re.UNICODE)
_NUMBER_RE = re.compile(r"^\d[\d,.:/\-]*$")

NOUN = "noun"
VERB = "verb"
ADJECTIVE = "adjective"
ADVERB = "adverb"

# Penn-style tag -> content class. Inflected verb forms (VBZ/VBD/VBG/VBN) are
# deliberately non-content: past forms and participles ride on auxiliaries and
# the concept graph stores base concepts, so only plain verb forms qualify.
_CONTENT_CLASS = {
    "NN": NOUN, "NNS": NOUN, "NNP": NOUN, "NNPS": NOUN,
    "VB": VERB, "VBP": VERB,
    "JJ": ADJECTIVE, "JJR": ADJECTIVE, "JJS": ADJECTIVE,
    "RB": ADVERB, "RBR": ADVERB, "RBS": ADVERB,
}

_PUNCT_TAGS = {
    ".": ".", "!": ".", "?": ".", ",": ",", ";": ":", ":": ":",
    "(": "(", ")": ")", '"': "''", "'": "''", "`": "``", "-": ":",
}


def content_class(tag: str) -> str | None:
    """Map a Penn-style tag to its content class, or None."""
    return _CONTENT_CLASS.get(tag)


@dataclass(frozen=True)
class Token:
    """One token of a sentence; ``tag`` is None until the tagger has run."""

    surface: str
    position: int
    tag: str | None = None

    @property
    def pos_class(self) -> str | None:
        return content_class(self.tag) if self.tag else None


def tokenize(sentence: str) -> list[Token]:
    """Split a sentence into word and punctuation tokens.

    Punctuation tokens are retained (taggers may need them) but never enter
    the bag.  Positions run gap-free from 0.
    """
    return [
        Token(surface=m.group(0), position=i)
        for i, m in enumerate(_TOKEN_RE.finditer(sentence))
    ]


class Tagger(Protocol):
    def tag(self, surfaces: Sequence[str]) -> list[str]:
        """Return one Penn-style tag per surface."""
        ...


# --- bundled rule tagger ---------------------------------------------------

_DETERMINERS = (
    "the a an this that these those both each every all some any no another "
    "such neither either"
)
_PREPOSITIONS = (
    "of in on at by for with about against between into through during before "
    "after above below from up down out off over under again unless since "
    "until than as near within without upon onto toward towards across around "
    "behind beside besides beyond despite except inside outside past "
    "throughout till underneath unlike versus via per while although though "
    "because whereas"
)
_CONJUNCTIONS = "and but or nor yet so"
_MODALS = "may might could should would can will must shall ought"
_PRONOUNS_PRP = (
    "i you he she it we they me him us them myself yourself himself herself "
    "itself ourselves yourselves themselves mine yours hers ours theirs"
)
_PRONOUNS_POSS = "my your his her its our their"
_ADVERBS = (
    "not never ever always often sometimes usually very too also just only "
    "even still here now then once again further perhaps maybe quite rather "
    "almost already soon together indeed solely herein thereby thus hence "
    "moreover furthermore nevertheless anyway instead ago"
)
_CONTRACTIONS_PRP = (
    "i'm i've i'll i'd we're we've we'll we'd you're you've you'll you'd he's "
    "he'll he'd she's she'll she'd it's it'll they're they've they'll they'd "
    "that's there's what's who's let's"
)
_CONTRACTIONS_MD = (
    "don't doesn't didn't won't wouldn't can't cannot couldn't shouldn't "
    "mustn't shan't isn't aren't wasn't weren't hasn't haven't hadn't ain't"
)
# Plain present forms of common verbs. These carry VBP, the verb form the
# bag keeps; anything inflected is caught by suffix rules or the entries
# below and never reaches the bag.
_PLAIN_VERBS = (
    "go come get make take know think see want give use find tell ask work "
    "seem feel try leave call need become put mean keep begin show hear play "
    "run move like live believe hold bring happen write provide sit stand "
    "lose pay meet include continue set learn change lead understand watch "
    "follow stop create speak allow add spend grow open walk win offer "
    "remember love consider appear buy wait serve die send expect build stay "
    "fall cut reach kill remain arrange collect deliver shoot attack arrive "
    "prepare act help agree support talk turn start wish worry listen explain "
    "occur involve produce require suggest raise eat drink choose drive rise "
    "break teach catch seek fight fly draw wear throw sell maintain assist say"
)
_IRREGULAR_PAST = (
    "saw said went came got made took knew thought found told gave kept left "
    "felt brought began held heard sent spent sat stood lost met ran paid "
    "wrote spoke drove ate fell grew threw wore chose rose broke bought "
    "taught caught sought fought became won built sold led meant dealt drank "
    "flew drew"
)
_PARTICIPLES = (
    "been done gone seen known taken given shown written spoken broken chosen "
    "forgotten gotten begun drunk sung sworn torn worn thrown grown flown "
    "drawn eaten fallen risen driven hidden ridden beaten frozen stolen"
)
_ADJECTIVES = (
    "same good new old great big small white right little large high "
    "different long important sure real free low certain critical available "
    "entire general common possible public honest modest accurate experienced "
    "unspecified formal"
)
_COMPARATIVES = "better worse more less fewer greater larger smaller higher lower"
_SUPERLATIVES = "best worst most least"
# Nouns the suffix rules would otherwise mangle (-ing, -ed, -est lookalikes).
_NOUN_PATCHES = (
    "thing king ring wing spring string building ceiling feeling meeting "
    "wedding morning evening something nothing anything everything interest "
    "forest arrest request harvest protest contest chest guest quest priest "
    "speed seed feed deed need bed red news politics series hundred"
)


def _spread(words: str, tag: str) -> dict[str, str]:
    return {w: tag for w in words.split()}


_LEXICON: dict[str, str] = {}
_LEXICON.update(_spread(_NOUN_PATCHES, "NN"))
_LEXICON.update(_spread(_PLAIN_VERBS, "VBP"))
_LEXICON.update(_spread(_IRREGULAR_PAST, "VBD"))
_LEXICON.update(_spread(_PARTICIPLES, "VBN"))
_LEXICON.update(_spread(_ADJECTIVES, "JJ"))
_LEXICON.update(_spread(_COMPARATIVES, "JJR"))
_LEXICON.update(_spread(_SUPERLATIVES, "JJS"))
_LEXICON.update(_spread(_ADVERBS, "RB"))
_LEXICON.update(_spread(_DETERMINERS, "DT"))
_LEXICON.update(_spread(_PREPOSITIONS, "IN"))
_LEXICON.update(_spread(_CONJUNCTIONS, "CC"))
_LEXICON.update(_spread(_MODALS, "MD"))
_LEXICON.update(_spread(_PRONOUNS_PRP, "PRP"))
_LEXICON.update(_spread(_PRONOUNS_POSS, "PRP$"))
_LEXICON.update(_spread(_CONTRACTIONS_PRP, "PRP"))
_LEXICON.update(_spread(_CONTRACTIONS_MD, "MD"))
_LEXICON.update(
    {
        "to": "TO", "there": "EX", "along": "RP", "away": "RP",
        "what": "WP", "who": "WP", "whom": "WP", "whose": "WP$",
        "which": "WDT", "when": "WRB", "where": "WRB", "why": "WRB",
        "how": "WRB", "yes": "UH", "oh": "UH", "hello": "UH", "hey": "UH",
        "please": "UH",
        "be": "VB", "let": "VB",
        "am": "VBP", "is": "VBZ", "are": "VBP", "was": "VBD", "were": "VBD",
        "been": "VBN", "being": "VBG",
        "have": "VBP", "has": "VBZ", "had": "VBD", "having": "VBG",
        "do": "VBP", "does": "VBZ", "did": "VBD", "doing": "VBG",
    }
)

_VOWELS = set("aeiouy")


class RuleTagger:
    """Deterministic lexicon + suffix tagger; unknown words default to NN.

    Context is ignored on purpose: tags depend only on the token itself,
    which keeps tagging reproducible and means the bag of a concatenation
    of sentences is the union of their bags.
    """

    def tag_word(self, surface: str) -> str:
        if not surface:
            return "SYM"
        if all(not ch.isalnum() for ch in surface):
            return _PUNCT_TAGS.get(surface, "SYM")
        if _NUMBER_RE.match(surface):
            return "CD"
        word = surface.lower()
        tag = _LEXICON.get(word)
        if tag is not None:
            return tag
        if word.endswith("ly") and len(word) > 3:
            return "RB"
        if word.endswith("ed") and len(word) > 3:
            return "VBD"
        if word.endswith("ing") and len(word) > 4 and _VOWELS & set(word[:-3]):
            return "VBG"
        if word.endswith("est") and len(word) > 4:
            return "JJS"
        if (
            word.endswith("s")
            and len(word) > 3
            and not word.endswith(("ss", "us", "is", "'s"))
        ):
            return "NNS"
        return "NN"

    def tag(self, surfaces: Sequence[str]) -> list[str]:
        return [self.tag_word(s) for s in surfaces]


_DEFAULT_TAGGER = RuleTagger()


def pos_tag(tokens: Sequence[Token], tagger: Tagger | None = None) -> list[Token]:
    """Attach a Penn-style tag to every token."""
    active = tagger if tagger is not None else _DEFAULT_TAGGER
    tags = active.tag([t.surface for t in tokens])
    return [replace(tok, tag=tag) for tok, tag in zip(tokens, tags)]


def parse_pretagged(line: str) -> list[Token]:
    """Parse one ``token/TAG`` space-separated pre-tagged sentence line.

    The split is on the last slash, so tokens containing slashes survive.
    """
    tokens = []
    for i, chunk in enumerate(line.split()):
        surface, sep, tag = chunk.rpartition("/")
        if not sep or not surface or not tag:
            raise ValueError(f"malformed token/TAG chunk: {chunk!r}")
        tokens.append(Token(surface=surface, position=i, tag=tag))
    return tokens


# --- lemmatizer ------------------------------------------------------------

_IRREGULAR_NOUNS = {
    "men": "man", "women": "woman", "children": "child", "feet": "foot",
    "teeth": "tooth", "mice": "mouse", "geese": "goose", "lives": "life",
    "wives": "wife", "knives": "knife", "leaves": "leaf", "shelves": "shelf",
    "wolves": "wolf", "halves": "half", "news": "news", "politics": "politics",
    "series": "series", "means": "means", "species": "species",
}

_IRREGULAR_VERBS = {
    "was": "be", "were": "be", "been": "be", "being": "be", "am": "be",
    "are": "be", "is": "be",
    "has": "have", "had": "have", "having": "have",
    "does": "do", "did": "do", "done": "do", "doing": "do",
    "went": "go", "gone": "go", "saw": "see", "seen": "see", "made": "make",
    "took": "take", "taken": "take", "knew": "know", "known": "know",
    "thought": "think", "found": "find", "told": "tell", "gave": "give",
    "given": "give", "kept": "keep", "left": "leave", "felt": "feel",
    "brought": "bring", "began": "begin", "begun": "begin", "held": "hold",
    "heard": "hear", "sent": "send", "spent": "spend", "sat": "sit",
    "stood": "stand", "lost": "lose", "met": "meet", "ran": "run",
    "paid": "pay", "wrote": "write", "written": "write", "spoke": "speak",
    "spoken": "speak", "drove": "drive", "driven": "drive", "ate": "eat",
    "eaten": "eat", "fell": "fall", "fallen": "fall", "grew": "grow",
    "grown": "grow", "threw": "throw", "thrown": "throw", "wore": "wear",
    "worn": "wear", "chose": "choose", "chosen": "choose", "rose": "rise",
    "risen": "rise", "broke": "break", "broken": "break", "bought": "buy",
    "taught": "teach", "caught": "catch", "sought": "seek", "fought": "fight",
    "became": "become", "won": "win", "built": "build", "led": "lead",
    "got": "get", "gotten": "get", "came": "come", "shown": "show",
    "meant": "mean", "sold": "sell", "drank": "drink", "drunk": "drink",
    "flew": "fly", "flown": "fly", "drew": "draw", "drawn": "draw",
    "said": "say", "says": "say", "goes": "go",
}

_KNOWN_VERB_STEMS = frozenset(_spread(_PLAIN_VERBS, "VBP")) | {"be", "have", "do"}


def _known_stem(stem: str) -> str:
    """Prefer a known base form (possibly e-final) over the raw stem."""
    if stem in _KNOWN_VERB_STEMS:
        return stem
    if stem + "e" in _KNOWN_VERB_STEMS:
        return stem + "e"
    return stem


def _restore_verb_stem(stem: str) -> str:
    """Base form for an -ed/-ing stem; undoes consonant doubling."""
    known = _known_stem(stem)
    if known != stem:
        return known
    if len(stem) > 2 and stem[-1] == stem[-2] and stem[-1] not in _VOWELS:
        return stem[:-1]
    return stem


def lemmatize_noun(word: str) -> str:
    irregular = _IRREGULAR_NOUNS.get(word)
    if irregular is not None:
        return irregular
    if word.endswith("ies") and len(word) > 4:
        return word[:-3] + "y"
    if word.endswith(("xes", "ches", "shes", "sses", "zes")) and len(word) > 4:
        return word[:-2]
    if word.endswith("s") and len(word) > 3 and not word.endswith(("ss", "us", "is")):
        return word[:-1]
    return word


def lemmatize_verb(word: str) -> str:
    irregular = _IRREGULAR_VERBS.get(word)
    if irregular is not None:
        return irregular
    if word.endswith("ies") and len(word) > 4:
        return word[:-3] + "y"
    if word.endswith("ied") and len(word) > 4:
        return word[:-3] + "y"
    if word.endswith("ing") and len(word) > 4:
        return _restore_verb_stem(word[:-3])
    if word.endswith("ed") and len(word) > 3:
        return _restore_verb_stem(word[:-2])
    if word.endswith("es") and len(word) > 4:
        return _known_stem(word[:-2])
    if word.endswith("s") and len(word) > 3 and not word.endswith("ss"):
        return _known_stem(word[:-1])
    return word


def lemmatize(word: str, pos_class: str) -> str:
    """Table-driven lemma of a lowercase word for the given content class.

    Idempotent: lemmatize(lemmatize(w)) == lemmatize(w).  Adjectives and
    adverbs pass through unchanged.
    """
    if pos_class == NOUN:
        return lemmatize_noun(word)
    if pos_class == VERB:
        return lemmatize_verb(word)
    return word


# --- exclusion config and bag building -------------------------------------

@dataclass(frozen=True)
class ExclusionConfig:
    """Word exclusions applied after tagging.

    ``words`` is matched against both the lowercase surface and the lemma.
    ``exclude_base_verbs`` drops tokens tagged exactly VB; set it to False
    to admit base-form verbs into the bag.
    """

    words: frozenset[str]
    exclude_base_verbs: bool = True

    @classmethod
    def from_file(cls, path: str | Path, exclude_base_verbs: bool = True) -> "ExclusionConfig":
        """Load a word list: one lowercase word per line, '#' comments."""
        words = set()
        for raw in Path(path).read_text(encoding="utf-8").splitlines():
            line = raw.split("#", 1)[0].strip().lower()
            if line:
                words.add(line)
        return cls(words=frozenset(words), exclude_base_verbs=exclude_base_verbs)


_default_exclusions: ExclusionConfig | None = None


def default_exclusions() -> ExclusionConfig:
    """The packaged exclusion list (function words, auxiliaries, negation)."""
    global _default_exclusions
    if _default_exclusions is None:
        source = resources.files("macskit.data").joinpath("exclusion_list.txt")
        words = set()
        for raw in source.read_text(encoding="utf-8").splitlines():
            line = raw.split("#", 1)[0].strip().lower()
            if line:
                words.add(line)
        _default_exclusions = ExclusionConfig(words=frozenset(words))
    return _default_exclusions


@dataclass(frozen=True)
class BagTerm:
    lemma: str
    first_position: int
    pos_class: str


@dataclass(frozen=True)
class BagOfTerms:
    """Ordered, de-duplicated content lemmas of one sentence."""

    terms: tuple[BagTerm, ...]

    def lemmas(self) -> list[str]:
        return [t.lemma for t in self.terms]

    def position_of(self, lemma: str) -> int:
        for term in self.terms:
            if term.lemma == lemma:
                return term.first_position
        raise KeyError(lemma)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)


def build_bag_of_terms(
    tagged: Iterable[Token], config: ExclusionConfig | None = None
) -> BagOfTerms:
    """Reduce tagged tokens to the ordered set of content lemmas.

    Keeps noun/verb/adjective/adverb classes, drops excluded words and
    (by default) base-form verbs, lemmatizes, and de-duplicates by lemma
    keeping the first occurrence.
    """
    cfg = config if config is not None else default_exclusions()
    seen: set[str] = set()
    terms: list[BagTerm] = []
    for token in tagged:
        cls = token.pos_class
        if cls is None:
            continue
        if token.tag == "VB" and cfg.exclude_base_verbs:
            continue
        word = token.surface.lower()
        lemma = lemmatize(word, cls)
        if word in cfg.words or lemma in cfg.words:
            continue
        if lemma in seen:
            continue
        seen.add(lemma)
        terms.append(BagTerm(lemma=lemma, first_position=token.position, pos_class=cls))
    return BagOfTerms(terms=tuple(terms))


class TextPipeline:
    """Convenience wrapper: sentence text to tagged tokens or bag of terms."""

    def __init__(
        self,
        tagger: Tagger | None = None,
        exclusions: ExclusionConfig | None = None,
    ):
        self.tagger = tagger if tagger is not None else _DEFAULT_TAGGER
        self.exclusions = exclusions if exclusions is not None else default_exclusions()

    def tagged(self, sentence: str) -> list[Token]:
        return pos_tag(tokenize(sentence), self.tagger)

    def bag(self, sentence: str) -> BagOfTerms:
        return build_bag_of_terms(self.tagged(sentence), self.exclusions)

    def bag_from_pretagged(self, line: str) -> BagOfTerms:
        return build_bag_of_terms(parse_pretagged(line), self.exclusions)
