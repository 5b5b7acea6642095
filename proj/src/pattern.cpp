#include "commbound/pattern.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>

#include "commbound/linalg.hpp"

namespace commbound {

namespace {

// Matches P's rows one at a time against chosen rows of M. After choosing
// rows r_0..r_{k-1}, every column of M restricts to a k-bit mask; P's first
// k rows are feasible iff its column masks can be matched to distinct M
// columns (as a sub-multiset, or as a subsequence in ordered mode).
class PatternSearch {
public:
    PatternSearch(const SignMatrix& m, const SignMatrix& p, PatternMode mode)
        : m_(m), p_(p), mode_(mode), m_masks_(m.cols(), 0), p_masks_(p.cols(), 0),
          used_row_(m.rows(), false) {}

    PatternMatch run() {
        PatternMatch out;
        if (dfs(0)) {
            out.found = true;
            out.witness = PatternWitness{chosen_, match_columns(p_.rows())};
        }
        return out;
    }

private:
    // Column assignment for the current prefix of depth k, or empty if none.
    std::vector<std::size_t> match_columns(std::size_t k) const {
        std::vector<std::size_t> assign;
        const std::uint64_t keep = k >= 64 ? ~0ULL : ((1ULL << k) - 1);
        if (mode_ == PatternMode::ordered) {
            std::size_t next = 0;
            for (std::size_t j = 0; j < p_.cols(); ++j) {
                while (next < m_.cols() && (m_masks_[next] & keep) != (p_masks_[j] & keep)) ++next;
                if (next == m_.cols()) return {};
                assign.push_back(next++);
            }
            return assign;
        }
        std::vector<bool> taken(m_.cols(), false);
        for (std::size_t j = 0; j < p_.cols(); ++j) {
            std::size_t c = 0;
            while (c < m_.cols() && (taken[c] || (m_masks_[c] & keep) != (p_masks_[j] & keep))) ++c;
            if (c == m_.cols()) return {};
            taken[c] = true;
            assign.push_back(c);
        }
        return assign;
    }

    bool dfs(std::size_t depth) {
        if (depth == p_.rows()) return true;
        const std::size_t start = (mode_ == PatternMode::ordered && depth > 0) ? chosen_.back() + 1 : 0;
        const std::uint64_t bit = 1ULL << depth;
        for (std::size_t j = 0; j < p_.cols(); ++j) {
            p_masks_[j] = (p_masks_[j] & ~bit) | (p_(depth, j) < 0 ? bit : 0);
        }
        for (std::size_t r = start; r < m_.rows(); ++r) {
            if (used_row_[r]) continue;
            for (std::size_t c = 0; c < m_.cols(); ++c) {
                m_masks_[c] = (m_masks_[c] & ~bit) | (m_(r, c) < 0 ? bit : 0);
            }
            if (match_columns(depth + 1).empty() && p_.cols() > 0) continue;
            used_row_[r] = true;
            chosen_.push_back(r);
            if (dfs(depth + 1)) return true;
            chosen_.pop_back();
            used_row_[r] = false;
        }
        return false;
    }

    const SignMatrix& m_;
    const SignMatrix& p_;
    PatternMode mode_;
    std::vector<std::uint64_t> m_masks_;
    std::vector<std::uint64_t> p_masks_;
    std::vector<bool> used_row_;
    std::vector<std::size_t> chosen_;
};

}  // namespace

PatternMatch contains_pattern(const SignMatrix& m, const SignMatrix& p, PatternMode mode) {
    if (p.rows() > m.rows() || p.cols() > m.cols()) {
        throw ArgumentError("pattern is larger than the matrix");
    }
    if (p.rows() > 64) throw ArgumentError("pattern has more than 64 rows");
    return PatternSearch(m, p, mode).run();
}

SignMatrix canonical_form(const SignMatrix& m) {
    if (m.cols() > 10) throw ArgumentError("canonical form limited to 10 columns");
    std::vector<std::size_t> perm(m.cols());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<std::int8_t>> best;
    std::vector<std::vector<std::int8_t>> rows(m.rows(), std::vector<std::int8_t>(m.cols()));
    do {
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = static_cast<std::int8_t>(m(r, perm[c]));
        std::sort(rows.begin(), rows.end());
        if (best.empty() || rows < best) best = rows;
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<std::int8_t> flat;
    flat.reserve(m.size());
    for (const auto& row : best) flat.insert(flat.end(), row.begin(), row.end());
    return SignMatrix(m.rows(), m.cols(), std::move(flat));
}

namespace {

// All +-1 vectors of the given even length with zero sum, in lexicographic
// order (-1 < +1).
std::vector<std::vector<std::int8_t>> balanced_rows(std::size_t length) {
    std::vector<std::vector<std::int8_t>> out;
    for (std::uint32_t code = 0; code < (1u << length); ++code) {
        if (static_cast<std::size_t>(__builtin_popcount(code)) * 2 != length) continue;
        std::vector<std::int8_t> row(length);
        // Most significant bit first so that increasing code is lexicographic.
        for (std::size_t i = 0; i < length; ++i) row[i] = (code >> (length - 1 - i)) & 1u ? 1 : -1;
        out.push_back(std::move(row));
    }
    return out;
}

class BalancedEnumerator {
public:
    BalancedEnumerator(std::size_t rows, std::size_t cols, const BalancedSearchConstraints& c,
                       const std::function<bool(const SignMatrix&)>& visit)
        : rows_(rows), cols_(cols), constraints_(c), visit_(visit), candidates_(balanced_rows(cols)),
          col_sums_(cols, 0) {}

    std::size_t run() {
        dfs(0, 0);
        return emitted_;
    }

private:
    bool dfs(std::size_t depth, std::size_t first) {
        if (depth == rows_) return consider();
        const long remaining = static_cast<long>(rows_ - depth - 1);
        for (std::size_t i = first; i < candidates_.size(); ++i) {
            const auto& row = candidates_[i];
            bool ok = true;
            for (std::size_t c = 0; c < cols_; ++c) {
                if (std::abs(col_sums_[c] + row[c]) > remaining) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            for (std::size_t c = 0; c < cols_; ++c) col_sums_[c] += row[c];
            chosen_.push_back(i);
            const bool keep_going = dfs(depth + 1, i);
            chosen_.pop_back();
            for (std::size_t c = 0; c < cols_; ++c) col_sums_[c] -= row[c];
            if (!keep_going) return false;
        }
        return true;
    }

    bool consider() {
        std::vector<std::int8_t> flat;
        flat.reserve(rows_ * cols_);
        for (auto i : chosen_) flat.insert(flat.end(), candidates_[i].begin(), candidates_[i].end());
        const SignMatrix canon = canonical_form(SignMatrix(rows_, cols_, std::move(flat)));
        if (!seen_.insert(canon).second) return true;
        if (exact_rank(canon) < constraints_.min_rank) return true;
        if (constraints_.forbidden) {
            const auto& f = *constraints_.forbidden;
            if (f.rows() <= rows_ && f.cols() <= cols_ &&
                contains_pattern(canon, f, PatternMode::up_to_permutation).found) {
                return true;
            }
        }
        ++emitted_;
        if (!visit_(canon)) return false;
        return emitted_ < constraints_.max_results;
    }

    std::size_t rows_, cols_;
    const BalancedSearchConstraints& constraints_;
    const std::function<bool(const SignMatrix&)>& visit_;
    std::vector<std::vector<std::int8_t>> candidates_;
    std::vector<long> col_sums_;
    std::vector<std::size_t> chosen_;
    std::set<SignMatrix> seen_;
    std::size_t emitted_ = 0;
};

}  // namespace

std::size_t search_strongly_balanced(std::size_t rows, std::size_t cols,
                                     const BalancedSearchConstraints& constraints,
                                     const std::function<bool(const SignMatrix&)>& visit) {
    if (rows == 0 || cols == 0 || rows % 2 || cols % 2) {
        throw ArgumentError("strongly balanced sign matrices need positive even dimensions: "
                            "an odd-length row or column of +-1 entries cannot sum to zero");
    }
    if (rows > 8 || cols > 8) throw ArgumentError("search is limited to 8x8 matrices");
    if (constraints.max_results == 0) return 0;
    return BalancedEnumerator(rows, cols, constraints, visit).run();
}

std::vector<SignMatrix> search_strongly_balanced(std::size_t rows, std::size_t cols,
                                                 const BalancedSearchConstraints& constraints) {
    std::vector<SignMatrix> out;
    search_strongly_balanced(rows, cols, constraints, [&](const SignMatrix& m) {
        out.push_back(m);
        return true;
    });
    return out;
}

}  // namespace commbound
