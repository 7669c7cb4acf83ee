"""Normalization and window segmentation, step by step.

Raw text goes through four moves: alphabetic tokens are extracted
(digits and punctuation act as separators), lowercased, filtered against
the stop-word list, and Porter-stemmed. The resulting term sequence is
then tiled into fixed-size windows; the trailing partial window is kept.

=== EXAMPLE OUTPUT ===
raw: The storms flooded 3 coastal towns; rescue crews recorded gusting winds!
terms: ['storm', 'flood', 'coastal', 'town', 'rescu', 'crew', 'record', 'gust', 'wind']
window 0: ['storm', 'flood', 'coastal', 'town']
window 1: ['rescu', 'crew', 'record', 'gust']
window 2: ['wind']
"""

from entangletext import PipelineConfig, RawDocument, segment_windows, tokenize_and_normalize


def main():
    raw = RawDocument(
        doc_id="demo",
        topic_id="storm",
        text="The storms flooded 3 coastal towns; rescue crews recorded gusting winds!",
    )
    config = PipelineConfig()
    sequence = tokenize_and_normalize(raw, config)
    print("raw:", raw.text)
    print("terms:", list(sequence.terms))

    for window in segment_windows(sequence, 4):
        print(f"window {window.index}: {list(window.terms)}")

    flat = [t for w in segment_windows(sequence, 4) for t in w.terms]
    assert flat == list(sequence.terms), "windows must tile the sequence exactly"
    print("tiling check: windows reconstruct the sequence")


if __name__ == "__main__":
    main()
