#pragma once

#include "lmmroot/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace lmmroot {

/// One root estimate with its cached function data.
/// `fx` is empty only for a terminal non-finite (divergent) iterate.
template <Real T>
struct IterationRecord {
    T x;
    std::optional<T> fx;
    std::optional<T> dfx;
    std::size_t index = 0;
};

/// Iterates in generation order, single writer. Indices are contiguous from 0.
template <Real T>
class IterateHistory {
public:
    const IterationRecord<T>& push(T x, std::optional<T> fx, std::optional<T> dfx) {
        entries_.push_back({std::move(x), std::move(fx), std::move(dfx), entries_.size()});
        return entries_.back();
    }

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    const IterationRecord<T>& operator[](std::size_t i) const { return entries_[i]; }
    const IterationRecord<T>& back() const { return entries_.back(); }

    std::span<const IterationRecord<T>> entries() const noexcept { return entries_; }

    /// The last `k` records (fewer if the history is shorter).
    std::span<const IterationRecord<T>> tail(std::size_t k) const noexcept {
        const std::size_t n = std::min(k, entries_.size());
        return std::span<const IterationRecord<T>>(entries_).subspan(entries_.size() - n, n);
    }

    std::vector<T> xs() const {
        std::vector<T> out;
        out.reserve(entries_.size());
        for (const auto& r : entries_) out.push_back(r.x);
        return out;
    }

private:
    std::vector<IterationRecord<T>> entries_;
};

}  // namespace lmmroot
