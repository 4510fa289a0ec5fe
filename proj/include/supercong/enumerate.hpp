#pragma once

#include <cstdint>
#include <vector>

namespace supercong {

// Visit every composition of `total` into exactly `parts` positive integers,
// in lexicographic order. The callback receives the parts vector by const
// reference and may return false to stop early; return true to continue.
// The vector is reused between calls.
template <typename Fn>
bool for_each_composition(int total, int parts, Fn&& fn) {
    if (parts <= 0 || total < parts) return true;
    std::vector<int> a(static_cast<std::size_t>(parts), 1);
    a.back() = total - (parts - 1);
    for (;;) {
        if (!fn(static_cast<const std::vector<int>&>(a))) return false;
        // Rightmost slot whose tail still has slack (some later part > 1).
        int i = parts - 2;
        std::int64_t tail = a[static_cast<std::size_t>(parts - 1)];
        while (i >= 0 && tail == parts - 1 - i) {
            tail += a[static_cast<std::size_t>(i)];
            --i;
        }
        if (i < 0) return true;
        ++a[static_cast<std::size_t>(i)];
        int rem = static_cast<int>(tail) - 1;
        for (int t = i + 1; t < parts - 1; ++t) {
            a[static_cast<std::size_t>(t)] = 1;
            --rem;
        }
        a[static_cast<std::size_t>(parts - 1)] = rem;
    }
}

// Visit every k-subset of {lo, lo+1, ..., hi-1} as a strictly increasing
// vector, in lexicographic order. Callback contract matches
// for_each_composition.
template <typename Fn>
bool for_each_combination(int lo, int hi, int k, Fn&& fn) {
    if (k < 0 || hi - lo < k) return true;
    std::vector<int> c(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = lo + i;
    if (k == 0) return fn(static_cast<const std::vector<int>&>(c));
    for (;;) {
        if (!fn(static_cast<const std::vector<int>&>(c))) return false;
        int i = k - 1;
        while (i >= 0 && c[static_cast<std::size_t>(i)] == hi - k + i) --i;
        if (i < 0) return true;
        ++c[static_cast<std::size_t>(i)];
        for (int t = i + 1; t < k; ++t) {
            c[static_cast<std::size_t>(t)] = c[static_cast<std::size_t>(t - 1)] + 1;
        }
    }
}

// Visit every weakly increasing k-tuple from {lo, ..., hi-1} (k-multiset),
// lexicographic order. Callback contract as above.
template <typename Fn>
bool for_each_multicombination(int lo, int hi, int k, Fn&& fn) {
    if (k < 0 || (k > 0 && hi <= lo)) return true;
    std::vector<int> c(static_cast<std::size_t>(k), lo);
    if (k == 0) return fn(static_cast<const std::vector<int>&>(c));
    for (;;) {
        if (!fn(static_cast<const std::vector<int>&>(c))) return false;
        int i = k - 1;
        while (i >= 0 && c[static_cast<std::size_t>(i)] == hi - 1) --i;
        if (i < 0) return true;
        ++c[static_cast<std::size_t>(i)];
        for (int t = i + 1; t < k; ++t) {
            c[static_cast<std::size_t>(t)] = c[static_cast<std::size_t>(i)];
        }
    }
}

} // namespace supercong
