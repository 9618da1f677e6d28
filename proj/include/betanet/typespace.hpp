#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace betanet {

struct TypeClass {
    int size = 0;  // N
    std::vector<int> counts;
};

// A node in the prefix tree of types: the first data.size() counts of a type
// of size N over an alphabet of n symbols.
struct TypePrefix {
    int size = 0;    // N
    int length = 0;  // n
    std::vector<int> data;

    static TypePrefix root(int N, int n) { return TypePrefix{N, n, {}}; }
    int sum() const;
    bool is_leaf() const { return static_cast<int>(data.size()) == length; }
};

std::vector<TypePrefix> children(const TypePrefix& prefix);
// children whose last entry is congruent to k mod m
std::vector<TypePrefix> children_last_entry_mod(const TypePrefix& prefix, int k, int m);

// Calls proc(std::span<const int>) once per complete type below prefix, in
// the order the tree generates them. Iterative; no recursion.
template <class Proc>
void dfs_process(const TypePrefix& prefix, Proc&& proc) {
    const int n = prefix.length, N = prefix.size;
    std::vector<int> c(n, 0);
    int depth = static_cast<int>(prefix.data.size());
    int used = 0;
    for (int i = 0; i < depth; ++i) {
        c[i] = prefix.data[i];
        used += c[i];
    }
    if (depth == n) {
        proc(std::span<const int>(c));
        return;
    }
    const int base = depth;
    // rem[i]: residual available at position i
    std::vector<int> rem(n + 1, 0);
    int pos = base;
    rem[pos] = N - used;
    c[pos] = -1;
    while (pos >= base) {
        if (pos == n - 1) {
            c[pos] = rem[pos];
            proc(std::span<const int>(c));
            --pos;
            continue;
        }
        if (++c[pos] > rem[pos]) {
            --pos;
            continue;
        }
        rem[pos + 1] = rem[pos] - c[pos];
        ++pos;
        c[pos] = -1;
    }
}

// C(N+n-1, n-1); throws std::overflow_error if it does not fit in 64 bits
std::uint64_t count_types(int N, int n);

// log(N!/prod c_i!) + sum c_i log p_i; -inf when a zero-probability cell is used
double log_emission_probability(std::span<const int> counts, std::span<const double> p);
double emission_probability(std::span<const int> counts, std::span<const double> p);
// |T| exp(-N (H(p_T) + H(p_T || p))) with |T| the multinomial coefficient
double emission_probability_entropy_form(std::span<const int> counts, std::span<const double> p);

}  // namespace betanet
