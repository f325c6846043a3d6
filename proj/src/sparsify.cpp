#include "vizing/sparsify.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>

namespace vizing {

ColorPartition::ColorPartition(Color mu, std::size_t eta)
{
    if (eta < 10 || eta * 10 > mu)
        throw PreconditionError("eta = " + std::to_string(eta) + " outside [10, mu/10] for mu = " + std::to_string(mu));
    mu_ = mu;
    eta_ = static_cast<unsigned>(eta);
    r_ = static_cast<Color>(mu / (2 * eta));
    q_ = static_cast<Color>(2 * eta * r_);
}

ColorPartition build_partition(Color mu, std::size_t eta) { return ColorPartition(mu, eta); }

FanClass classify_fan(const UFan& f, const ColorPartition& part)
{
    FanClass out;
    unsigned a = part.block_of(f.c_center);
    unsigned b = part.block_of(f.c_v);
    if (a == 0 || b == 0 || part.block_of(f.c_w) == 0) return out;
    out.lo = std::min(a, b);
    out.hi = std::max(a, b);
    if (a == b) {
        out.kind = FanKind::Uniform;
        out.pair = ColorPartition::pair_of_block(a);
    } else if (out.lo % 2 == 1 && out.hi == out.lo + 1) {
        out.kind = FanKind::Aligned;
        out.pair = ColorPartition::pair_of_block(out.hi);
    } else {
        out.kind = FanKind::NonSocial;
    }
    return out;
}

RelabelPlan relabel_colors(SeparableCollection& fans)
{
    const Color mu = fans.coloring().mu();
    RelabelPlan plan;
    plan.frequency.assign(mu + 1, 0);
    for (FanId id : fans.ids()) {
        const UFan& f = fans.fan(id);
        Color cs[3] = {f.c_center, f.c_v, f.c_w};
        std::sort(cs, cs + 3);
        for (int i = 0; i < 3; ++i)
            if (i == 0 || cs[i] != cs[i - 1]) ++plan.frequency[cs[i]];
    }
    std::vector<Color> order(mu);
    std::iota(order.begin(), order.end(), Color{1});
    std::stable_sort(order.begin(), order.end(),
                     [&](Color a, Color b) { return plan.frequency[a] > plan.frequency[b]; });
    plan.permutation.assign(mu + 1, kNoColor);
    for (Color i = 0; i < mu; ++i) plan.permutation[order[i]] = i + 1;
    bool identity = true;
    for (Color c = 1; c <= mu; ++c) identity = identity && plan.permutation[c] == c;
    if (!identity) fans.permute_colors(plan.permutation);
    return plan;
}

std::optional<std::pair<Color, Color>> relevant_type(const UFan& f, Vertex x, unsigned k,
                                                     const ColorPartition& part)
{
    FanClass cls = classify_fan(f, part);
    if (cls.kind != FanKind::NonSocial) return std::nullopt;
    Color c = f.color_at(x);
    unsigned s = part.block_of(c);
    unsigned to_lo = 2 * k - 1;
    unsigned to_hi = 2 * k;
    if (cls.lo == 2 * k || cls.hi == 2 * k - 1) std::swap(to_lo, to_hi);
    unsigned t;
    if (s == cls.lo) t = to_lo;
    else if (s == cls.hi) t = to_hi;
    else return std::nullopt;
    if (t == s) return std::nullopt;
    return std::pair{c, part.color_at(t, part.index_in_block(c))};
}

namespace {

struct PathKey {
    Color lo, hi;
    Vertex end;
    auto operator<=>(const PathKey&) const = default;
};

PathKey key_of(const AlternatingPath& p)
{
    return {std::min(p.alpha, p.beta), std::max(p.alpha, p.beta), std::min(p.start, p.end)};
}

void add_fan_paths(const SeparableCollection& fans, FanId id, unsigned k, const ColorPartition& part,
                   std::map<PathKey, std::size_t>& seen, std::vector<AlternatingPath>& out)
{
    const UFan& f = fans.fan(id);
    for (Vertex x : {f.center, f.leaf_v, f.leaf_w}) {
        auto type = relevant_type(f, x, k, part);
        if (!type) continue;
        AlternatingPath p = fans.coloring().walk(x, type->first, type->second);
        if (seen.emplace(key_of(p), out.size()).second) out.push_back(std::move(p));
    }
}

} // namespace

std::vector<AlternatingPath> compute_paths(const SeparableCollection& fans, FanId id, unsigned k,
                                           const ColorPartition& part)
{
    if (!fans.contains(id)) throw PreconditionError("fan not in collection");
    if (classify_fan(fans.fan(id), part).kind != FanKind::NonSocial)
        throw PreconditionError("compute_paths needs a non-social fan");
    std::map<PathKey, std::size_t> seen;
    std::vector<AlternatingPath> out;
    add_fan_paths(fans, id, k, part, seen, out);
    return out;
}

std::vector<AlternatingPath> relevant_paths(const SeparableCollection& fans, std::span<const FanId> batch,
                                            unsigned k, const ColorPartition& part)
{
    std::map<PathKey, std::size_t> seen;
    std::vector<AlternatingPath> out;
    for (FanId id : batch) add_fan_paths(fans, id, k, part, seen, out);
    return out;
}

std::vector<FanId> find_k_bad(const SeparableCollection& fans, unsigned k, const ColorPartition& part)
{
    if (k < 1 || k > part.eta()) throw PreconditionError("pair index out of range");
    const PartialColoring& chi = fans.coloring();
    std::vector<char> bad(fans.capacity(), 0);
    std::vector<FanId> social;
    for (FanId id : fans.ids())
        if (classify_fan(fans.fan(id), part).social()) {
            social.push_back(id);
            bad[id] = 1;
        }

    std::vector<Color> others;
    auto probe = [&](FanId g, Vertex z, Color c, Color d) {
        for (Color col : {c, d}) {
            auto hit = fans.find(z, col);
            if (!hit || *hit == g || bad[*hit]) continue;
            auto type = relevant_type(fans.fan(*hit), z, k, part);
            if (type && std::minmax(type->first, type->second) == std::minmax(c, d)) bad[*hit] = 1;
        }
    };
    for (FanId g : social) {
        const UFan& f = fans.fan(g);
        for (Vertex x : {f.center, f.leaf_v, f.leaf_w}) {
            Color c = f.color_at(x);
            unsigned s = part.block_of(c);
            Color j = part.index_in_block(c);
            others.clear();
            if (s != 2 * k - 1 && s != 2 * k) {
                others.push_back(part.color_at(2 * k - 1, j));
                others.push_back(part.color_at(2 * k, j));
            } else {
                for (unsigned t = 1; t <= part.blocks(); ++t)
                    if (t != 2 * k - 1 && t != 2 * k) others.push_back(part.color_at(t, j));
            }
            for (Color d : others) {
                AlternatingPath p = chi.walk(x, c, d);
                probe(g, x, c, d);
                if (p.end != x) probe(g, p.end, c, d);
            }
        }
    }
    std::vector<FanId> out;
    for (FanId id = 0; id < bad.size(); ++id)
        if (bad[id]) out.push_back(id);
    return out;
}

ModifyResult modify_types(SeparableCollection& fans, std::span<const FanId> batch, unsigned k,
                          const ColorPartition& part)
{
    if (batch.empty()) throw PreconditionError("empty batch");
    if (k < 1 || k > part.eta()) throw PreconditionError("pair index out of range");
    FanClass first{};
    for (std::size_t i = 0; i < batch.size(); ++i) {
        if (!fans.contains(batch[i])) throw PreconditionError("batch fan not in collection");
        const UFan& f = fans.fan(batch[i]);
        if (f.damaged()) throw PreconditionError("batch fan is damaged");
        FanClass cls = classify_fan(f, part);
        if (cls.kind != FanKind::NonSocial) throw PreconditionError("batch fan is social or out of range");
        if (i == 0) first = cls;
        else if (cls.lo != first.lo || cls.hi != first.hi) throw PreconditionError("batch mixes block classes");
    }
    std::vector<FanId> members(batch.begin(), batch.end());
    std::sort(members.begin(), members.end());

    ModifyResult result;
    result.paths = relevant_paths(fans, batch, k, part);
    std::vector<FanId> touched;
    for (const AlternatingPath& p : result.paths)
        for (const FanTouch& t : fans.flip_path(p))
            if (!std::binary_search(members.begin(), members.end(), t.id)) touched.push_back(t.id);
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (FanId id : touched) result.touched.push_back({id, fans.fan(id).damaged()});
    return result;
}

void write_iteration(std::ostream& out, const SparsifyIteration& it)
{
    out << "sparsify k=" << it.k << " pair=(" << it.i << "," << it.i2 << ") V=" << it.batch
        << " hat=" << it.social_after << " U=" << it.fans_after << " bad=" << it.bad << '\n';
}

SparsifyResult sparsify_types(SeparableCollection& fans, std::size_t eta, const SparsifyOptions& options)
{
    SparsifyResult result{ColorPartition(fans.coloring().mu(), eta), {}, fans.size(), 0, {}};
    const ColorPartition& part = result.partition;
    if (result.lambda == 0) return result;

    result.plan = relabel_colors(fans);
    for (FanId id : fans.ids()) {
        const UFan& f = fans.fan(id);
        if (f.damaged() || classify_fan(f, part).kind == FanKind::OutOfRange) fans.erase(id);
    }
    result.after_filter = fans.size();

    const std::size_t need = (result.lambda + 99) / 100;
    const std::size_t cap = 400 * std::size_t{part.eta()} * part.eta() + 16;
    const unsigned eta_k = part.eta();
    std::vector<std::size_t> per_pair(eta_k + 1);
    std::vector<std::size_t> uniform_block(part.blocks() + 1);
    std::vector<std::size_t> aligned_pair(eta_k + 1);
    while (true) {
        std::fill(per_pair.begin(), per_pair.end(), 0);
        std::fill(uniform_block.begin(), uniform_block.end(), 0);
        std::fill(aligned_pair.begin(), aligned_pair.end(), 0);
        std::size_t social = 0;
        for (FanId id : fans.ids()) {
            FanClass cls = classify_fan(fans.fan(id), part);
            if (!cls.social()) continue;
            ++social;
            ++per_pair[cls.pair];
            if (cls.kind == FanKind::Uniform) ++uniform_block[cls.lo];
            else ++aligned_pair[cls.pair];
        }
        if (social >= need) break;
        if (result.iterations.size() >= cap) throw InvariantError("sparsify exceeded its iteration bound");

        unsigned k = 1;
        for (unsigned t = 1; t <= eta_k; ++t) {
            if (per_pair[t] != aligned_pair[t] + uniform_block[2 * t - 1] + uniform_block[2 * t])
                throw InvariantError("social counts disagree");
            if (per_pair[t] < per_pair[k]) k = t;
        }

        std::vector<FanId> bad = find_k_bad(fans, k, part);
        std::map<std::pair<unsigned, unsigned>, std::vector<FanId>> classes;
        for (FanId id : fans.ids()) {
            if (std::binary_search(bad.begin(), bad.end(), id)) continue;
            FanClass cls = classify_fan(fans.fan(id), part);
            if (cls.kind == FanKind::NonSocial) classes[{cls.lo, cls.hi}].push_back(id);
        }
        if (classes.empty()) throw InvariantError("no k-good batch available");
        auto best = classes.begin();
        for (auto it = classes.begin(); it != classes.end(); ++it)
            if (it->second.size() > best->second.size()) best = it;

        SparsifyIteration it;
        it.k = k;
        it.i = best->first.first;
        it.i2 = best->first.second;
        it.batch = best->second.size();
        it.fans_before = fans.size();
        it.social_before = social;
        it.social_in_k = per_pair[k];
        it.bad = bad.size();

        const std::vector<FanId>& batch = best->second;
        if (options.before_modify) options.before_modify(fans, batch, k, part);
        ModifyResult mod = modify_types(fans, batch, k, part);
        for (FanId id : batch) {
            FanClass cls = classify_fan(fans.fan(id), part);
            if (cls.kind != FanKind::Aligned || cls.pair != k || fans.fan(id).damaged())
                throw InvariantError("modified fan did not become aligned");
        }
        for (const FanTouch& t : mod.touched) fans.erase(t.id);

        it.fans_after = fans.size();
        it.social_after = 0;
        for (FanId id : fans.ids())
            if (classify_fan(fans.fan(id), part).social()) ++it.social_after;
        result.iterations.push_back(it);
        if (options.trace) write_iteration(*options.trace, it);
    }
    for (FanId id : fans.ids())
        if (!classify_fan(fans.fan(id), part).social()) fans.erase(id);
    return result;
}

} // namespace vizing
