#ifndef GARFIELD_TEXT_HPP
#define GARFIELD_TEXT_HPP

#include <cstddef>
#include <string>
#include <string_view>

namespace garfield {

std::string trim(std::string_view s);

/// Canonical form of a cited work or journal title: ASCII letters uppercased,
/// ASCII punctuation removed, whitespace runs collapsed to one space, then
/// truncated to `truncation_length` code points. Trailing space left by the
/// cut is dropped. Non-ASCII code points pass through unchanged.
std::string normalize_work_title(std::string_view title, std::size_t truncation_length);

/// Same canonicalisation without truncation; used for document titles.
std::string normalize_full_title(std::string_view title);

/// Levenshtein distance over UTF-8 code points.
std::size_t levenshtein(std::string_view a, std::string_view b);

/// Levenshtein distance if it is <= `bound`, otherwise `bound + 1`.
/// Runs in O(bound * min(|a|, |b|)).
std::size_t bounded_levenshtein(std::string_view a, std::string_view b, std::size_t bound);

/// First page token: "13-31" -> "13", leading zeros dropped, uppercased.
std::string normalize_page(std::string_view page);

/// DOI key: trimmed, resolver prefix stripped, lowercased.
std::string normalize_doi(std::string_view doi);

/// Shortest round-trip decimal form of `v` in fixed notation.
std::string format_number(double v);

}  // namespace garfield

#endif  // GARFIELD_TEXT_HPP
