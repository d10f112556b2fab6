#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "deckrecon/errors.hpp"

namespace deckrecon {

/// Sparse non-negative integer histogram: key -> count, absent keys count 0.
/// Used for degree histograms (key = degree) and clique-degree buckets
/// (key = number of cliques through a vertex).
class SparseHistogram {
public:
    SparseHistogram() = default;

    void add(std::int64_t key, std::int64_t count = 1) {
        if (count == 0) return;
        auto it = counts_.find(key);
        if (it == counts_.end()) {
            counts_.emplace(key, count);
        } else {
            it->second += count;
            if (it->second == 0) counts_.erase(it);
        }
    }

    void remove(std::int64_t key, std::int64_t count = 1) { add(key, -count); }

    std::int64_t at(std::int64_t key) const {
        auto it = counts_.find(key);
        return it == counts_.end() ? 0 : it->second;
    }

    /// Number of entries with key strictly below `key` (prefix count).
    std::int64_t below(std::int64_t key) const {
        std::int64_t total = 0;
        for (const auto& [k, c] : counts_) {
            if (k >= key) break;
            total += c;
        }
        return total;
    }

    std::int64_t total() const {
        std::int64_t t = 0;
        for (const auto& [k, c] : counts_) t += c;
        return t;
    }

    /// Sum of key * count over all entries.
    std::int64_t weighted_sum() const {
        std::int64_t t = 0;
        for (const auto& [k, c] : counts_) t += k * c;
        return t;
    }

    std::int64_t max_key() const {
        return counts_.empty() ? -1 : counts_.rbegin()->first;
    }

    bool empty() const { return counts_.empty(); }
    std::size_t support_size() const { return counts_.size(); }

    void add_all(const SparseHistogram& other) {
        for (const auto& [k, c] : other.counts_) add(k, c);
    }

    bool all_non_negative() const {
        for (const auto& [k, c] : counts_)
            if (c < 0) return false;
        return true;
    }

    const std::map<std::int64_t, std::int64_t>& entries() const { return counts_; }

    bool operator==(const SparseHistogram& other) const { return counts_ == other.counts_; }
    bool operator!=(const SparseHistogram& other) const { return !(*this == other); }
    bool operator<(const SparseHistogram& other) const { return counts_ < other.counts_; }

    /// "t:c,t:c" ascending by key; "-" when empty.
    std::string serialize() const {
        if (counts_.empty()) return "-";
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, c] : counts_) {
            if (!first) os << ',';
            first = false;
            os << k << ':' << c;
        }
        return os.str();
    }

    static SparseHistogram parse(const std::string& text) {
        SparseHistogram h;
        if (text == "-") return h;
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t comma = text.find(',', pos);
            std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            std::size_t colon = item.find(':');
            if (colon == std::string::npos) throw InputError("histogram parse error near '" + item + "'");
            try {
                std::int64_t k = std::stoll(item.substr(0, colon));
                std::int64_t c = std::stoll(item.substr(colon + 1));
                if (c < 0) throw InputError("histogram parse error: negative count");
                h.add(k, c);
            } catch (const std::logic_error&) {
                throw InputError("histogram parse error near '" + item + "'");
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return h;
    }

private:
    std::map<std::int64_t, std::int64_t> counts_;
};

using DegreeHistogram = SparseHistogram;

} // namespace deckrecon
