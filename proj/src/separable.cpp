#include "vizing/separable.hpp"

#include <algorithm>
#include <ostream>

namespace vizing {

SeparableCollection::SeparableCollection(PartialColoring& coloring) : coloring_(&coloring)
{
    const Graph& g = coloring.graph();
    edge_fan_.assign(g.m(), kNoFan);
    assigned_.reset(g.offsets());
    free_ = coloring.truncated_missing();
    coloring.attach(this);
}

SeparableCollection::SeparableCollection(const SeparableCollection& other, PartialColoring& coloring)
    : coloring_(&coloring),
      fans_(other.fans_),
      edges_(other.edges_),
      alive_(other.alive_),
      free_ids_(other.free_ids_),
      edge_fan_(other.edge_fan_),
      assigned_(other.assigned_),
      free_(other.free_),
      invalidated_(other.invalidated_),
      size_(other.size_)
{
    if (coloring.colors() != other.coloring().colors() || &coloring.graph() != &other.graph())
        throw PreconditionError("collection copied onto a different coloring");
    coloring.attach(this);
}

SeparableCollection::~SeparableCollection() { coloring_->detach(this); }

void SeparableCollection::assign(FanId id, Vertex x, Color c)
{
    ++ops_;
    if (!assigned_.insert(x, c, id)) throw InvariantError("color already assigned at vertex");
    free_.clear(x, c);
}

void SeparableCollection::unassign(Vertex x, Color c)
{
    ++ops_;
    assigned_.erase(x, c);
    if (coloring_->truncated_missing().test(x, c)) free_.set(x, c);
}

FanId SeparableCollection::allocate(const UFan& f, EdgeId a, EdgeId b)
{
    FanId id;
    if (!free_ids_.empty()) {
        id = free_ids_.back();
        free_ids_.pop_back();
        fans_[id] = f;
        edges_[id] = {a, b};
        alive_[id] = 1;
    } else {
        id = static_cast<FanId>(fans_.size());
        fans_.push_back(f);
        edges_.push_back({a, b});
        alive_.push_back(1);
    }
    edge_fan_[a] = id;
    edge_fan_[b] = id;
    ++size_;
    return id;
}

std::optional<FanId> SeparableCollection::insert(const UFan& f)
{
    const Graph& g = graph();
    const PartialColoring& chi = *coloring_;
    if (f.center >= g.n() || f.leaf_v >= g.n() || f.leaf_w >= g.n())
        throw InvariantError("u-fan vertex out of range");
    if (f.center == f.leaf_v || f.center == f.leaf_w || f.leaf_v == f.leaf_w)
        throw InvariantError("u-fan vertices must be distinct");
    auto a = g.find_edge(f.center, f.leaf_v);
    auto b = g.find_edge(f.center, f.leaf_w);
    if (!a || !b) throw InvariantError("u-fan edge not in graph");
    if (chi.is_colored(*a) || chi.is_colored(*b)) throw InvariantError("u-fan edge is colored");
    for (Color c : {f.c_center, f.c_v, f.c_w})
        if (c == kNoColor || c > chi.mu()) throw InvariantError("u-fan color out of range");
    if (!chi.is_missing(f.center, f.c_center) || !chi.is_missing(f.leaf_v, f.c_v) ||
        !chi.is_missing(f.leaf_w, f.c_w))
        throw InvariantError("u-fan color not missing at its vertex");
    if (f.damaged()) throw InvariantError("u-fan colors must satisfy c_u != c_v = c_w");

    ops_ += 3;
    if (edge_fan_[*a] != kNoFan || edge_fan_[*b] != kNoFan) return std::nullopt;
    if (assigned_.find(f.center, f.c_center) || assigned_.find(f.leaf_v, f.c_v) ||
        assigned_.find(f.leaf_w, f.c_w))
        return std::nullopt;
    FanId id = allocate(f, *a, *b);
    assign(id, f.center, f.c_center);
    assign(id, f.leaf_v, f.c_v);
    assign(id, f.leaf_w, f.c_w);
    return id;
}

bool SeparableCollection::erase(FanId id)
{
    if (!contains(id)) return false;
    const UFan& f = fans_[id];
    unassign(f.center, f.c_center);
    unassign(f.leaf_v, f.c_v);
    unassign(f.leaf_w, f.c_w);
    edge_fan_[edges_[id].first] = kNoFan;
    edge_fan_[edges_[id].second] = kNoFan;
    alive_[id] = 0;
    free_ids_.push_back(id);
    --size_;
    return true;
}

bool SeparableCollection::erase(const UFan& f)
{
    auto id = locate(f);
    return id && erase(*id);
}

void SeparableCollection::clear()
{
    for (FanId id = 0; id < fans_.size(); ++id) erase(id);
    invalidated_.clear();
}

std::optional<FanId> SeparableCollection::locate(const UFan& f) const
{
    if (f.center >= graph().n() || f.leaf_v >= graph().n()) return std::nullopt;
    auto e = graph().find_edge(f.center, f.leaf_v);
    ++ops_;
    if (!e || edge_fan_[*e] == kNoFan) return std::nullopt;
    FanId id = edge_fan_[*e];
    const UFan& g = fans_[id];
    bool same_leaves = (g.leaf_v == f.leaf_v && g.leaf_w == f.leaf_w) ||
                       (g.leaf_v == f.leaf_w && g.leaf_w == f.leaf_v);
    if (g.center != f.center || !same_leaves) return std::nullopt;
    return id;
}

std::optional<FanId> SeparableCollection::find(Vertex x, Color c) const
{
    ++ops_;
    const FanId* id = assigned_.find(x, c);
    if (!id) return std::nullopt;
    return *id;
}

Color SeparableCollection::missing_color(Vertex x) const
{
    ++ops_;
    Color c = free_.first(x);
    if (c == kNoColor) throw InvariantError("no free color at vertex " + std::to_string(x));
    return c;
}

bool SeparableCollection::is_free(Vertex x, Color c) const
{
    ++ops_;
    return coloring_->is_missing(x, c) && !assigned_.find(x, c);
}

std::vector<FanId> SeparableCollection::ids() const
{
    std::vector<FanId> out;
    out.reserve(size_);
    for (FanId id = 0; id < fans_.size(); ++id)
        if (alive_[id]) out.push_back(id);
    return out;
}

void SeparableCollection::recolor_at(FanId id, Vertex x, Color c)
{
    UFan& f = fans_[id];
    if (x == f.center) f.c_center = c;
    else if (x == f.leaf_v) f.c_v = c;
    else if (x == f.leaf_w) f.c_w = c;
}

std::vector<FanTouch> SeparableCollection::flip_path(const AlternatingPath& path)
{
    coloring_->verify_path(path);
    struct Change {
        FanId id;
        Vertex at;
        Color from;
        Color to;
    };
    std::vector<Change> changes;
    auto collect = [&](Vertex z) {
        for (Color c : {path.alpha, path.beta})
            if (auto id = find(z, c)) changes.push_back({*id, z, c, path.other(c)});
    };
    collect(path.start);
    if (!path.empty()) collect(path.end);

    for (const Change& ch : changes) unassign(ch.at, ch.from);
    for (const Change& ch : changes) {
        assign(ch.id, ch.at, ch.to);
        recolor_at(ch.id, ch.at, ch.to);
    }
    coloring_->flip(path);

    std::vector<FanTouch> touched;
    for (const Change& ch : changes) {
        bool seen = std::any_of(touched.begin(), touched.end(), [&](const FanTouch& t) { return t.id == ch.id; });
        if (!seen) touched.push_back({ch.id, false});
    }
    for (FanTouch& t : touched) t.damaged = fans_[t.id].damaged();
    return touched;
}

Activation SeparableCollection::activate(FanId id)
{
    if (!contains(id)) throw PreconditionError("activating a fan not in the collection");
    UFan f = fans_[id];
    if (f.damaged()) throw PreconditionError("activating a damaged u-fan");
    const Color alpha = f.c_center;
    const Color beta = f.c_v;
    Vertex leaf = f.leaf_v;
    AlternatingPath path = coloring_->walk(f.leaf_v, alpha, beta);
    if (!path.empty() && path.end == f.center) {
        leaf = f.leaf_w;
        path = coloring_->walk(f.leaf_w, alpha, beta);
        if (!path.empty() && path.end == f.center)
            throw InvariantError("both leaf paths end at the center");
    }
    Activation result{kNoEdge, {}};
    for (const FanTouch& t : flip_path(path))
        if (t.id != id) result.touched.push_back(t);
    EdgeId e = leaf == f.leaf_v ? edges_[id].first : edges_[id].second;
    erase(id);
    coloring_->set_color(e, alpha);
    result.colored = e;
    return result;
}

std::vector<FanId> SeparableCollection::take_invalidated()
{
    std::vector<FanId> out;
    out.swap(invalidated_);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void SeparableCollection::on_palette_change(Vertex x, Color c, bool now_missing)
{
    ++ops_;
    const FanId* id = assigned_.find(x, c);
    if (now_missing) {
        if (!id) free_.set(x, c);
    } else {
        free_.clear(x, c);
        if (id) invalidated_.push_back(*id);
    }
}

void SeparableCollection::rebuild_free()
{
    free_ = coloring_->truncated_missing();
    for (Vertex x = 0; x < graph().n(); ++x)
        for (Color c : assigned_.keys(x)) free_.clear(x, c);
}

void SeparableCollection::permute_colors(std::span<const Color> perm)
{
    coloring_->detach(this);
    coloring_->permute_colors(perm);
    assigned_.reset(graph().offsets());
    for (FanId id = 0; id < fans_.size(); ++id) {
        if (!alive_[id]) continue;
        UFan& f = fans_[id];
        f.c_center = perm[f.c_center];
        f.c_v = perm[f.c_v];
        f.c_w = perm[f.c_w];
        assigned_.insert(f.center, f.c_center, id);
        assigned_.insert(f.leaf_v, f.c_v, id);
        assigned_.insert(f.leaf_w, f.c_w, id);
    }
    rebuild_free();
    coloring_->attach(this);
}

SeparableReport SeparableCollection::validate() const
{
    SeparableReport report;
    auto add = [&](const std::string& s) {
        if (report.violations.size() < 64) report.violations.push_back(s);
    };
    const Graph& g = graph();
    const PartialColoring& chi = *coloring_;
    std::size_t alive = 0;
    for (FanId id = 0; id < fans_.size(); ++id) {
        if (!alive_[id]) continue;
        ++alive;
        const UFan& f = fans_[id];
        std::string tag = "fan " + std::to_string(id) + ": ";
        if (f.center == f.leaf_v || f.center == f.leaf_w || f.leaf_v == f.leaf_w) add(tag + "repeated vertex");
        auto a = g.find_edge(f.center, f.leaf_v);
        auto b = g.find_edge(f.center, f.leaf_w);
        if (!a || !b || *a != edges_[id].first || *b != edges_[id].second) {
            add(tag + "edge record mismatch");
            continue;
        }
        if (chi.is_colored(*a) || chi.is_colored(*b)) add(tag + "edge is colored");
        if (edge_fan_[*a] != id || edge_fan_[*b] != id) add(tag + "edge index mismatch");
        for (Vertex x : {f.center, f.leaf_v, f.leaf_w}) {
            Color c = f.color_at(x);
            if (!chi.is_missing(x, c)) add(tag + "assigned color present at vertex " + std::to_string(x));
            const FanId* slot = assigned_.find(x, c);
            if (!slot || *slot != id) add(tag + "assignment index mismatch at vertex " + std::to_string(x));
        }
        if (f.damaged()) ++report.damaged;
    }
    if (alive != size_) add("size counter mismatch");
    if (assigned_.total() != 3 * size_) add("assignment count is not three per fan");
    std::size_t edge_refs = 0;
    for (EdgeId e = 0; e < edge_fan_.size(); ++e) {
        if (edge_fan_[e] == kNoFan) continue;
        ++edge_refs;
        FanId id = edge_fan_[e];
        if (!contains(id) || (edges_[id].first != e && edges_[id].second != e))
            add("edge " + std::to_string(e) + " points at a foreign fan");
    }
    if (edge_refs != 2 * size_) add("fans are not edge-disjoint");
    const detail::BitRows& miss = chi.truncated_missing();
    for (Vertex x = 0; x < g.n(); ++x) {
        if (free_.width(x) != miss.width(x)) {
            add("free-set width wrong at vertex " + std::to_string(x));
            continue;
        }
        for (Color c = 1; c <= free_.width(x); ++c) {
            bool expect = miss.test(x, c) && !assigned_.find(x, c);
            if (free_.test(x, c) != expect)
                add("free set wrong for color " + std::to_string(c) + " at vertex " + std::to_string(x));
        }
        if (chi.mu() >= g.degree(x) + 1 && free_.first(x) == kNoColor)
            add("no free color at vertex " + std::to_string(x));
    }
    return report;
}

std::vector<FanTouch> flip_path(PartialColoring& chi, const AlternatingPath& path)
{
    chi.flip(path);
    return {};
}

std::vector<FanTouch> flip_path(SeparableCollection& fans, const AlternatingPath& path)
{
    return fans.flip_path(path);
}

void write_fans(std::ostream& out, const SeparableCollection& fans)
{
    const Graph& g = fans.graph();
    for (FanId id : fans.ids()) {
        const UFan& f = fans.fan(id);
        out << g.label(f.center) << ' ' << g.label(f.leaf_v) << ' ' << g.label(f.leaf_w) << ' ' << f.c_center
            << ' ' << f.c_v << ' ' << f.c_w << '\n';
    }
}

} // namespace vizing
