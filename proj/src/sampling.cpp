#include "citesim/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "citesim/error.hpp"

namespace citesim {

namespace {

struct Keyed {
    double key;
    NodeId id;
};

// Orders the heap so its top is the weakest entry currently held.
struct WeakerFirst {
    bool operator()(const Keyed& a, const Keyed& b) const {
        if (a.key != b.key) return a.key < b.key;
        return a.id > b.id;
    }
};

}  // namespace

std::vector<NodeId> ares_sample(std::span<const NodeId> items, std::span<const double> weights, long k,
                                RngStream& rng) {
    if (k < 0) throw ConfigError("sample size must be non-negative");
    if (items.size() != weights.size()) throw ConfigError("pool items and weights differ in length");
    std::vector<NodeId> out;
    if (k == 0) return out;

    const WeakerFirst weaker;
    std::vector<Keyed> heap;
    heap.reserve(static_cast<std::size_t>(std::min<long>(k, static_cast<long>(items.size()))));
    // std::*_heap with `comp` keeps the comp-largest element on top, so
    // invert WeakerFirst to keep the weakest there.
    const auto comp = [&](const Keyed& a, const Keyed& b) { return weaker(b, a); };
    for (std::size_t i = 0; i < items.size(); ++i) {
        const double w = weights[i];
        if (!(w > 0.0)) continue;
        const Keyed cand{std::log(rng.uniform_open01()) / w, items[i]};
        if (static_cast<long>(heap.size()) < k) {
            heap.push_back(cand);
            std::push_heap(heap.begin(), heap.end(), comp);
        } else if (weaker(heap.front(), cand)) {
            std::pop_heap(heap.begin(), heap.end(), comp);
            heap.back() = cand;
            std::push_heap(heap.begin(), heap.end(), comp);
        }
    }
    out.reserve(heap.size());
    for (const Keyed& e : heap) out.push_back(e.id);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace citesim
