#include "garfield/text.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cctype>
#include <vector>

namespace garfield {

namespace {

bool is_space(unsigned char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

// Decodes UTF-8 leniently: invalid bytes map to themselves.
std::u32string decode(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        auto c = static_cast<unsigned char>(s[i]);
        std::size_t len = 1;
        char32_t cp = c;
        if (c >= 0xF0 && c < 0xF8) {
            len = 4;
            cp = c & 0x07;
        } else if (c >= 0xE0) {
            len = 3;
            cp = c & 0x0F;
        } else if (c >= 0xC0) {
            len = 2;
            cp = c & 0x1F;
        }
        if (len > 1) {
            bool ok = i + len <= s.size();
            for (std::size_t k = 1; ok && k < len; ++k) {
                auto cc = static_cast<unsigned char>(s[i + k]);
                if ((cc & 0xC0) != 0x80) {
                    ok = false;
                } else {
                    cp = (cp << 6) | (cc & 0x3F);
                }
            }
            if (!ok) {
                len = 1;
                cp = c;
            }
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

void encode(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x100 && cp >= 0x80 && cp < 0xC0) {
        // stray continuation byte from a lenient decode
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::u32string canonical_code_points(std::string_view title) {
    std::u32string out;
    bool pending_space = false;
    for (char32_t cp : decode(title)) {
        if (cp < 0x80) {
            auto c = static_cast<unsigned char>(cp);
            if (is_space(c)) {
                pending_space = !out.empty();
                continue;
            }
            if (std::ispunct(c)) {
                continue;
            }
            cp = static_cast<char32_t>(std::toupper(c));
        }
        if (pending_space) {
            out.push_back(U' ');
            pending_space = false;
        }
        out.push_back(cp);
    }
    return out;
}

std::string to_utf8(const std::u32string& cps) {
    std::string out;
    out.reserve(cps.size());
    for (char32_t cp : cps) {
        encode(cp, out);
    }
    return out;
}

}  // namespace

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && is_space(static_cast<unsigned char>(s[b]))) {
        ++b;
    }
    while (e > b && is_space(static_cast<unsigned char>(s[e - 1]))) {
        --e;
    }
    return std::string(s.substr(b, e - b));
}

std::string normalize_work_title(std::string_view title, std::size_t truncation_length) {
    auto cps = canonical_code_points(title);
    if (cps.size() > truncation_length) {
        cps.resize(truncation_length);
    }
    while (!cps.empty() && cps.back() == U' ') {
        cps.pop_back();
    }
    return to_utf8(cps);
}

std::string normalize_full_title(std::string_view title) { return to_utf8(canonical_code_points(title)); }

std::size_t levenshtein(std::string_view a, std::string_view b) {
    auto s = decode(a);
    auto t = decode(b);
    if (s.size() < t.size()) {
        std::swap(s, t);
    }
    std::vector<std::size_t> prev(t.size() + 1);
    std::vector<std::size_t> cur(t.size() + 1);
    for (std::size_t j = 0; j <= t.size(); ++j) {
        prev[j] = j;
    }
    for (std::size_t i = 1; i <= s.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= t.size(); ++j) {
            std::size_t sub = prev[j - 1] + (s[i - 1] == t[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[t.size()];
}

std::size_t bounded_levenshtein(std::string_view a, std::string_view b, std::size_t bound) {
    auto s = decode(a);
    auto t = decode(b);
    if (s.size() < t.size()) {
        std::swap(s, t);
    }
    if (s.size() - t.size() > bound) {
        return bound + 1;
    }
    if (bound == 0) {
        return s == t ? 0 : 1;
    }
    // Only cells within `bound` of the diagonal can hold values <= bound.
    const std::size_t cap = bound + 1;
    std::vector<std::size_t> prev(t.size() + 1, cap);
    std::vector<std::size_t> cur(t.size() + 1, cap);
    for (std::size_t j = 0; j <= std::min(t.size(), bound); ++j) {
        prev[j] = j;
    }
    for (std::size_t i = 1; i <= s.size(); ++i) {
        std::size_t lo = i > bound ? i - bound : 1;
        std::size_t hi = std::min(t.size(), i + bound);
        std::fill(cur.begin(), cur.end(), cap);
        if (i <= bound) {
            cur[0] = i;
        }
        std::size_t row_min = cur[0];
        for (std::size_t j = lo; j <= hi; ++j) {
            std::size_t sub = prev[j - 1] + (s[i - 1] == t[j - 1] ? 0 : 1);
            std::size_t v = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
            cur[j] = std::min(v, cap);
            row_min = std::min(row_min, cur[j]);
        }
        if (row_min > bound) {
            return cap;
        }
        std::swap(prev, cur);
    }
    return std::min(prev[t.size()], cap);
}

std::string normalize_page(std::string_view page) {
    std::string p = trim(page);
    auto dash = p.find('-');
    if (dash != std::string::npos) {
        p = trim(p.substr(0, dash));
    }
    std::size_t z = 0;
    while (z + 1 < p.size() && p[z] == '0') {
        ++z;
    }
    p.erase(0, z);
    for (auto& c : p) {
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    return p;
}

std::string normalize_doi(std::string_view doi) {
    std::string d = trim(doi);
    for (auto& c : d) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    for (std::string_view prefix : {"https://doi.org/", "http://doi.org/", "https://dx.doi.org/", "http://dx.doi.org/", "doi:"}) {
        if (d.starts_with(prefix)) {
            d.erase(0, prefix.size());
            break;
        }
    }
    return trim(d);
}

std::string format_number(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed);
    if (ec != std::errc{}) {
        return "nan";
    }
    return std::string(buf.data(), ptr);
}

}  // namespace garfield
