#ifndef TSMR_PARTIAL_ORDER_HPP
#define TSMR_PARTIAL_ORDER_HPP

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace tsmr {

/// Strict partial order over items 0..m-1, kept transitively closed.
struct PartialOrder {
    int m = 0;
    std::vector<std::uint8_t> before; // before[a*m+b] != 0  iff  a ordered before b

    PartialOrder() = default;
    explicit PartialOrder(int items) : m(items), before(static_cast<size_t>(items) * items, 0) {}

    bool has(int a, int b) const { return before[static_cast<size_t>(a) * m + b] != 0; }
    void set(int a, int b) { before[static_cast<size_t>(a) * m + b] = 1; }

    std::vector<std::pair<int, int>> pairs() const;
    /// Pairs not implied by transitivity of the remaining ones (Hasse diagram).
    std::vector<std::pair<int, int>> reduced_pairs() const;

    bool operator==(const PartialOrder& o) const { return m == o.m && before == o.before; }
};

/// Warshall closure; throws parse_error if the relation has a cycle.
PartialOrder close_transitive(const PartialOrder& raw);

/// Closure of `base` plus the pair (a,b); throws precondition_error on a cycle.
PartialOrder with_pair(const PartialOrder& base, int a, int b);

/// Smallest-id-first topological order (the deterministic completion).
std::vector<int> first_linear_extension(const PartialOrder& po);

/// Completion placing item c below exactly its forced superiors and above
/// everything else; both blocks in smallest-id-first topological order.
std::vector<int> extension_with_item_high(const PartialOrder& po, int c);

/// Enumerates linear extensions by smallest-available-id backtracking.
/// Visitor returns false to stop early; returns false iff stopped early.
bool for_each_linear_extension(const PartialOrder& po,
                               const std::function<bool(const std::vector<int>&)>& visit);

/// Number of linear extensions, clamped at `clamp` to avoid overflow.
long long count_linear_extensions(const PartialOrder& po, long long clamp);

} // namespace tsmr

#endif
