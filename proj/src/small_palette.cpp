#include "vizing/small_palette.hpp"

#include <map>
#include <set>

namespace vizing {

SmallStats color_small(SeparableCollection& fans)
{
    SmallStats stats;
    stats.lambda = fans.size();
    using Type = std::pair<Color, Color>;

    std::vector<Type> type_of(fans.capacity());
    std::map<Type, std::vector<FanId>> buckets;
    std::map<Type, std::size_t> live;
    for (FanId id : fans.ids()) {
        const UFan& f = fans.fan(id);
        if (f.damaged()) {
            fans.erase(id);
            continue;
        }
        type_of[id] = f.type();
        buckets[type_of[id]].push_back(id);
        ++live[type_of[id]];
    }
    // Largest live count first, then the smaller type.
    struct ByCount {
        bool operator()(const std::pair<std::size_t, Type>& a, const std::pair<std::size_t, Type>& b) const
        {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        }
    };
    std::set<std::pair<std::size_t, Type>, ByCount> order;
    for (const auto& [t, n] : live) order.insert({n, t});
    auto drop = [&](FanId id) {
        Type t = type_of[id];
        std::size_t& n = live[t];
        order.erase({n, t});
        if (--n > 0) order.insert({n, t});
    };

    const std::size_t mu = fans.coloring().mu();
    while (!order.empty() && stats.iterations < mu * mu) {
        ++stats.iterations;
        Type t = order.begin()->second;
        std::vector<FanId> batch = std::move(buckets[t]);
        buckets.erase(t);
        for (FanId id : batch) {
            if (!fans.contains(id)) continue;
            drop(id);
            Activation act = fans.activate(id);
            ++stats.colored;
            std::size_t others = 0;
            for (const FanTouch& touch : act.touched) {
                if (touch.id == id || !fans.contains(touch.id)) continue;
                ++others;
                drop(touch.id);
                fans.erase(touch.id);
            }
            stats.max_other_changes = std::max(stats.max_other_changes, others);
        }
        if (live[t] != 0) throw InvariantError("color_small left fans behind in an activated bucket");
    }
    stats.residual_after_loop = fans.size();
    fans.clear();
    return stats;
}

} // namespace vizing
