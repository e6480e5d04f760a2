#include "tsmr/partial_order.hpp"

#include <algorithm>

#include "tsmr/errors.hpp"

namespace tsmr {

std::vector<std::pair<int, int>> PartialOrder::pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (has(a, b)) out.emplace_back(a, b);
    return out;
}

std::vector<std::pair<int, int>> PartialOrder::reduced_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            if (!has(a, b)) continue;
            bool implied = false;
            for (int c = 0; c < m && !implied; ++c)
                implied = c != a && c != b && has(a, c) && has(c, b);
            if (!implied) out.emplace_back(a, b);
        }
    return out;
}

PartialOrder close_transitive(const PartialOrder& raw) {
    PartialOrder po = raw;
    const int m = po.m;
    for (int k = 0; k < m; ++k)
        for (int a = 0; a < m; ++a) {
            if (!po.has(a, k)) continue;
            for (int b = 0; b < m; ++b)
                if (po.has(k, b)) po.set(a, b);
        }
    for (int a = 0; a < m; ++a) {
        if (po.has(a, a)) throw parse_error("constraint cycle involving item " + std::to_string(a));
        for (int b = a + 1; b < m; ++b)
            if (po.has(a, b) && po.has(b, a))
                throw parse_error("constraint cycle between items " + std::to_string(a) + " and " +
                                  std::to_string(b));
    }
    return po;
}

PartialOrder with_pair(const PartialOrder& base, int a, int b) {
    if (base.has(b, a)) throw precondition_error("pair contradicts existing constraints");
    PartialOrder po = base;
    po.set(a, b);
    // a inherits b's successors, b's predecessors inherit both.
    const int m = po.m;
    for (int x = 0; x < m; ++x) {
        bool above = x == a || po.has(x, a);
        if (!above) continue;
        po.set(x, b);
        for (int y = 0; y < m; ++y)
            if (po.has(b, y)) po.set(x, y);
    }
    for (int x = 0; x < m; ++x)
        if (po.has(x, x)) throw precondition_error("pair creates a cycle");
    return po;
}

std::vector<int> first_linear_extension(const PartialOrder& po) {
    const int m = po.m;
    std::vector<int> indeg(m, 0);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (po.has(a, b)) ++indeg[b];
    std::vector<char> placed(m, 0);
    std::vector<int> out;
    out.reserve(m);
    for (int step = 0; step < m; ++step) {
        int pick = -1;
        for (int c = 0; c < m; ++c)
            if (!placed[c] && indeg[c] == 0) { pick = c; break; }
        placed[pick] = 1;
        out.push_back(pick);
        for (int b = 0; b < m; ++b)
            if (po.has(pick, b)) --indeg[b];
    }
    return out;
}

std::vector<int> extension_with_item_high(const PartialOrder& po, int c) {
    const int m = po.m;
    std::vector<int> superiors, rest;
    for (int x = 0; x < m; ++x) {
        if (x == c) continue;
        (po.has(x, c) ? superiors : rest).push_back(x);
    }
    auto topo_block = [&](const std::vector<int>& block) {
        std::vector<int> out;
        std::vector<char> placed(m, 0);
        for (size_t step = 0; step < block.size(); ++step) {
            int pick = -1;
            for (int x : block) {
                if (placed[x]) continue;
                bool ready = true;
                for (int y : block)
                    if (!placed[y] && y != x && po.has(y, x)) { ready = false; break; }
                if (ready) { pick = x; break; }
            }
            placed[pick] = 1;
            out.push_back(pick);
        }
        return out;
    };
    std::vector<int> out = topo_block(superiors);
    out.push_back(c);
    auto tail = topo_block(rest);
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
}

namespace {

bool extend_rec(const PartialOrder& po, std::vector<int>& indeg, std::vector<char>& placed,
                std::vector<int>& prefix, const std::function<bool(const std::vector<int>&)>& visit) {
    const int m = po.m;
    if (static_cast<int>(prefix.size()) == m) return visit(prefix);
    for (int c = 0; c < m; ++c) {
        if (placed[c] || indeg[c] != 0) continue;
        placed[c] = 1;
        prefix.push_back(c);
        for (int b = 0; b < m; ++b)
            if (po.has(c, b)) --indeg[b];
        bool keep_going = extend_rec(po, indeg, placed, prefix, visit);
        for (int b = 0; b < m; ++b)
            if (po.has(c, b)) ++indeg[b];
        prefix.pop_back();
        placed[c] = 0;
        if (!keep_going) return false;
    }
    return true;
}

} // namespace

bool for_each_linear_extension(const PartialOrder& po,
                               const std::function<bool(const std::vector<int>&)>& visit) {
    const int m = po.m;
    std::vector<int> indeg(m, 0);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (po.has(a, b)) ++indeg[b];
    std::vector<char> placed(m, 0);
    std::vector<int> prefix;
    prefix.reserve(m);
    return extend_rec(po, indeg, placed, prefix, visit);
}

long long count_linear_extensions(const PartialOrder& po, long long clamp) {
    long long count = 0;
    for_each_linear_extension(po, [&](const std::vector<int>&) {
        ++count;
        return count < clamp;
    });
    return count;
}

} // namespace tsmr
