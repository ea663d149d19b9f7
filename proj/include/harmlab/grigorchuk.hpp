#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace harmlab::grig {

// Letters of the Grigorchuk group: 0 = a, 1 = b, 2 = c, 3 = d.
// All four are involutions; {e,b,c,d} form a Klein four-group; a swaps the
// two subtrees and b, c, d act below with first-level sections
// b = (a, c), c = (a, d), d = (e, b).
using Word = std::vector<uint8_t>;

/// Standard reduction: drop squares, fold adjacent {b,c,d} pairs through
/// the Klein four-group. The result has no "aa" and no two adjacent
/// letters from {b,c,d}. Reduction is not a canonical form.
Word reduce(Word w);

/// Concatenate two reduced words and re-reduce.
Word concat_reduce(const Word& lhs, const Word& rhs);

/// Word problem by the standard self-similar recursion: w is trivial iff
/// it fixes the first tree level (even number of a's) and both first-level
/// sections are trivial. Section words are strictly shorter for |w| >= 2,
/// which bounds the recursion. Results are memoized process-wide.
/// Input must be reduced.
bool is_trivial(const Word& w);

/// Canonical key of the group element represented by w (reduced).
/// Serialized minimal portrait over the nucleus {e,a,b,c,d}: an element in
/// the nucleus is a single letter; anything else is "(" + swap bit +
/// key(section 0) + key(section 1) + ")". Group-equal words always map to
/// the same key, so hashing and equality can use the key alone.
std::string canonical_key(const Word& w);

/// First-level sections (w|_0, w|_1) of a reduced word, reduced.
std::pair<Word, Word> sections(const Word& w);

std::string word_str(const Word& w);  // "adab", "e" for the empty word
Word parse_word(const std::string& s);

}  // namespace harmlab::grig
