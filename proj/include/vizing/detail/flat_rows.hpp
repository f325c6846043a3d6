#pragma once

// Row-partitioned containers used for the per-vertex structures. Every row has
// a fixed capacity set at construction (the vertex degree, or deg+1 bits), so
// the whole family lives in two or three contiguous arrays.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "vizing/types.hpp"

namespace vizing::detail {

/// Per-row sorted key -> value arrays with binary-search lookup.
template <class Key, class Value>
class SortedRows {
public:
    SortedRows() = default;
    explicit SortedRows(std::vector<std::uint32_t> offsets) { reset(std::move(offsets)); }

    void reset(std::vector<std::uint32_t> offsets)
    {
        offsets_ = std::move(offsets);
        std::size_t rows = offsets_.empty() ? 0 : offsets_.size() - 1;
        size_.assign(rows, 0);
        keys_.assign(offsets_.empty() ? 0 : offsets_.back(), Key{});
        values_.assign(keys_.size(), Value{});
        total_ = 0;
    }

    std::size_t rows() const { return size_.size(); }
    std::size_t size(std::size_t row) const { return size_[row]; }
    std::size_t capacity(std::size_t row) const { return offsets_[row + 1] - offsets_[row]; }
    std::size_t total() const { return total_; }

    const Value* find(std::size_t row, Key key) const
    {
        auto first = keys_.begin() + offsets_[row];
        auto last = first + size_[row];
        auto it = std::lower_bound(first, last, key);
        if (it == last || *it != key) return nullptr;
        return &values_[static_cast<std::size_t>(it - keys_.begin())];
    }

    Value* find(std::size_t row, Key key)
    {
        return const_cast<Value*>(static_cast<const SortedRows*>(this)->find(row, key));
    }

    /// Returns false when the key is already present.
    bool insert(std::size_t row, Key key, Value value)
    {
        std::size_t begin = offsets_[row];
        std::size_t n = size_[row];
        auto first = keys_.begin() + begin;
        auto it = std::lower_bound(first, first + n, key);
        if (it != first + n && *it == key) return false;
        if (n == capacity(row)) throw InvariantError("row capacity exceeded");
        std::size_t pos = static_cast<std::size_t>(it - keys_.begin());
        std::size_t end = begin + n;
        std::move_backward(keys_.begin() + pos, keys_.begin() + end, keys_.begin() + end + 1);
        std::move_backward(values_.begin() + pos, values_.begin() + end, values_.begin() + end + 1);
        keys_[pos] = key;
        values_[pos] = value;
        ++size_[row];
        ++total_;
        return true;
    }

    bool erase(std::size_t row, Key key)
    {
        std::size_t begin = offsets_[row];
        std::size_t n = size_[row];
        auto first = keys_.begin() + begin;
        auto it = std::lower_bound(first, first + n, key);
        if (it == first + n || *it != key) return false;
        std::size_t pos = static_cast<std::size_t>(it - keys_.begin());
        std::size_t end = begin + n;
        std::move(keys_.begin() + pos + 1, keys_.begin() + end, keys_.begin() + pos);
        std::move(values_.begin() + pos + 1, values_.begin() + end, values_.begin() + pos);
        --size_[row];
        --total_;
        return true;
    }

    std::span<const Key> keys(std::size_t row) const
    {
        return {keys_.data() + offsets_[row], size_[row]};
    }
    std::span<const Value> values(std::size_t row) const
    {
        return {values_.data() + offsets_[row], size_[row]};
    }
    Value* value_data(std::size_t row) { return values_.data() + offsets_[row]; }

    bool operator==(const SortedRows& other) const
    {
        if (size_ != other.size_) return false;
        for (std::size_t r = 0; r < size_.size(); ++r) {
            if (!std::ranges::equal(keys(r), other.keys(r))) return false;
            if (!std::ranges::equal(values(r), other.values(r))) return false;
        }
        return true;
    }

private:
    std::vector<std::uint32_t> offsets_;
    std::vector<std::uint32_t> size_;
    std::vector<Key> keys_;
    std::vector<Value> values_;
    std::size_t total_ = 0;
};

/// Per-row bitsets over colors 1..width(row).
class BitRows {
public:
    BitRows() = default;

    void reset(std::span<const Color> widths, bool value)
    {
        width_.assign(widths.begin(), widths.end());
        offsets_.assign(width_.size() + 1, 0);
        for (std::size_t r = 0; r < width_.size(); ++r)
            offsets_[r + 1] = offsets_[r] + (width_[r] + 63) / 64;
        words_.assign(offsets_.back(), value ? ~std::uint64_t{0} : 0);
        if (value) {
            for (std::size_t r = 0; r < width_.size(); ++r) {
                unsigned tail = width_[r] % 64;
                if (tail != 0) words_[offsets_[r + 1] - 1] = (std::uint64_t{1} << tail) - 1;
            }
        }
    }

    Color width(std::size_t row) const { return width_[row]; }
    bool in_range(std::size_t row, Color c) const { return c >= 1 && c <= width_[row]; }

    bool test(std::size_t row, Color c) const
    {
        if (!in_range(row, c)) return false;
        std::size_t b = c - 1;
        return (words_[offsets_[row] + b / 64] >> (b % 64)) & 1U;
    }
    void set(std::size_t row, Color c)
    {
        if (!in_range(row, c)) return;
        std::size_t b = c - 1;
        words_[offsets_[row] + b / 64] |= std::uint64_t{1} << (b % 64);
    }
    void clear(std::size_t row, Color c)
    {
        if (!in_range(row, c)) return;
        std::size_t b = c - 1;
        words_[offsets_[row] + b / 64] &= ~(std::uint64_t{1} << (b % 64));
    }

    /// Smallest set color in the row, or kNoColor.
    Color first(std::size_t row) const { return next(row, 1); }

    /// Smallest set color >= from, or kNoColor.
    Color next(std::size_t row, Color from) const
    {
        if (from < 1) from = 1;
        if (from > width_[row]) return kNoColor;
        std::size_t b = from - 1;
        std::size_t w = offsets_[row] + b / 64;
        std::uint64_t word = words_[w] & (~std::uint64_t{0} << (b % 64));
        while (true) {
            if (word != 0) {
                std::size_t bit = (w - offsets_[row]) * 64 + static_cast<std::size_t>(std::countr_zero(word));
                return static_cast<Color>(bit + 1);
            }
            if (++w == offsets_[row + 1]) return kNoColor;
            word = words_[w];
        }
    }

    std::size_t count(std::size_t row) const
    {
        std::size_t total = 0;
        for (std::size_t w = offsets_[row]; w < offsets_[row + 1]; ++w) total += std::popcount(words_[w]);
        return total;
    }

    std::size_t words() const { return words_.size(); }

    bool operator==(const BitRows& other) const = default;

private:
    std::vector<Color> width_;
    std::vector<std::uint32_t> offsets_;
    std::vector<std::uint64_t> words_;
};

} // namespace vizing::detail
