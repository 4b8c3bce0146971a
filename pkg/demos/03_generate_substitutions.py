"""Generate labeled obfuscated sentences from a clean corpus.

The generator swaps each sentence's first noun for the word with the next
higher corpus frequency, after a sequence of gates (length, noun presence,
frequency-list membership, hypernym, language).  Skipped sentences say
which gate rejected them, so corpus statistics stay auditable.

Run from the repository root:  python3 demos/03_generate_substitutions.py
"""

from pathlib import Path

from macskit import FrequencyList, HypernymOracle, substitute_corpus

DATA = Path(__file__).parent / "data"

frequency_list = FrequencyList.from_tsv(DATA / "frequency_list.tsv")
hypernyms = HypernymOracle.from_file(DATA / "hypernym_words.txt")

# ---- the frequency-step rule -------------------------------------------------
print("replacement rule: the word with the next higher corpus frequency")
print("(equal frequencies tie-break alphabetically, see the last row)")
for word in ("bomb", "attack", "pistol", "inadequacy"):
    freq = frequency_list.frequency(word)
    replacement = frequency_list.next_higher_frequency_term(word)
    print(f"  {word:>10} ({freq:>6}) -> {replacement} "
          f"({frequency_list.frequency(replacement)})")

# ---- corpus run ---------------------------------------------------------------
lines = (DATA / "sample_corpus.txt").read_text(encoding="utf-8").splitlines()
print(f"\nsubstituting {len(lines)} corpus sentences:")
kept = 0
for record in substitute_corpus(lines, frequency_list, hypernyms):
    if record.is_substituted:
        kept += 1
        print(f"  OK   {record.nf} -> {record.nf_prime}: {record.substituted}")
    else:
        print(f"  skip ({record.skip_reason}): {record.original[:60]}")
print(f"\n{kept}/{len(lines)} sentences substituted; "
      "successful records carry the planted term as the label")
