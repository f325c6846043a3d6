#include "vizing/coloring.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace vizing {

namespace {

std::vector<Color> truncation_widths(const Graph& g, Color mu)
{
    std::vector<Color> widths(g.n());
    for (Vertex v = 0; v < g.n(); ++v)
        widths[v] = static_cast<Color>(std::min<std::size_t>(g.degree(v) + 1, mu));
    return widths;
}

} // namespace

PartialColoring::PartialColoring(const Graph& g, Color mu, std::span<const Color> initial)
    : graph_(&g), mu_(mu)
{
    if (!initial.empty() && initial.size() != g.m())
        throw PreconditionError("initial coloring has wrong length");
    rebuild(initial);
}

PartialColoring::PartialColoring(const PartialColoring& other)
    : graph_(other.graph_),
      mu_(other.mu_),
      color_of_(other.color_of_),
      by_color_(other.by_color_),
      missing_(other.missing_),
      uncolored_(other.uncolored_),
      observer_(nullptr),
      ops_(0)
{
}

void PartialColoring::rebuild(std::span<const Color> initial)
{
    const Graph& g = *graph_;
    color_of_.assign(g.m(), kNoColor);
    by_color_.reset(g.offsets());
    auto widths = truncation_widths(g, mu_);
    missing_.reset(widths, true);
    uncolored_ = g.m();
    for (EdgeId e = 0; e < initial.size(); ++e) {
        Color c = initial[e];
        if (c == kNoColor) continue;
        if (c > mu_) throw PreconditionError("color " + std::to_string(c) + " exceeds palette size");
        const Edge& ed = g.endpoints(e);
        for (Vertex x : {ed.u, ed.v}) {
            if (!by_color_.insert(x, c, e))
                throw PreconditionError("improper initial coloring: color " + std::to_string(c) +
                                        " repeated at vertex " + std::to_string(x));
            missing_.clear(x, c);
        }
        color_of_[e] = c;
        --uncolored_;
    }
    ops_ += 2 * (g.m() - uncolored_);
}

std::vector<EdgeId> PartialColoring::uncolored_edges() const
{
    std::vector<EdgeId> out;
    out.reserve(uncolored_);
    for (EdgeId e = 0; e < color_of_.size(); ++e)
        if (color_of_[e] == kNoColor) out.push_back(e);
    return out;
}

std::size_t PartialColoring::colors_used() const
{
    std::vector<char> seen(mu_ + 1, 0);
    std::size_t count = 0;
    for (Color c : color_of_)
        if (c != kNoColor && !seen[c]) {
            seen[c] = 1;
            ++count;
        }
    return count;
}

bool PartialColoring::is_missing(Vertex x, Color c) const
{
    ++ops_;
    return by_color_.find(x, c) == nullptr;
}

EdgeId PartialColoring::edge_with(Vertex x, Color c) const
{
    ++ops_;
    const EdgeId* e = by_color_.find(x, c);
    return e ? *e : kNoEdge;
}

void PartialColoring::notify(Vertex x, Color c, bool now_missing)
{
    if (observer_) observer_->on_palette_change(x, c, now_missing);
}

void PartialColoring::lose(Vertex x, Color c, EdgeId e)
{
    ++ops_;
    by_color_.insert(x, c, e);
    missing_.clear(x, c);
    notify(x, c, false);
}

void PartialColoring::gain(Vertex x, Color c)
{
    ++ops_;
    by_color_.erase(x, c);
    missing_.set(x, c);
    notify(x, c, true);
}

void PartialColoring::set_color(EdgeId e, Color c)
{
    if (c > mu_) throw PreconditionError("color " + std::to_string(c) + " exceeds palette size");
    Color old = color_of_[e];
    if (old == c) return;
    const Edge& ed = graph_->endpoints(e);
    if (c != kNoColor) {
        for (Vertex x : {ed.u, ed.v})
            if (edge_with(x, c) != kNoEdge)
                throw PreconditionError("color " + std::to_string(c) + " already present at vertex " +
                                        std::to_string(x));
    }
    color_of_[e] = c;
    if (old != kNoColor) {
        gain(ed.u, old);
        gain(ed.v, old);
    } else {
        --uncolored_;
    }
    if (c != kNoColor) {
        lose(ed.u, c, e);
        lose(ed.v, c, e);
    } else {
        ++uncolored_;
    }
}

AlternatingPath PartialColoring::walk(Vertex x, Color a, Color b) const
{
    if (a == b || a == kNoColor || b == kNoColor) throw PreconditionError("path type needs two colors");
    AlternatingPath path;
    path.alpha = a;
    path.beta = b;
    path.start = x;
    path.end = x;
    bool miss_a = is_missing(x, a);
    bool miss_b = is_missing(x, b);
    if (!miss_a && !miss_b)
        throw PreconditionError("vertex " + std::to_string(x) + " is not an endpoint of a {" +
                                std::to_string(a) + "," + std::to_string(b) + "} path");
    if (miss_a && miss_b) return path;
    Color c = miss_a ? b : a;
    Vertex cur = x;
    while (true) {
        EdgeId e = edge_with(cur, c);
        if (e == kNoEdge) break;
        path.edges.push_back(e);
        cur = graph_->other(e, cur);
        c = (c == a) ? b : a;
    }
    path.end = cur;
    return path;
}

void PartialColoring::verify_path(const AlternatingPath& path) const
{
    const Color a = path.alpha;
    const Color b = path.beta;
    if (a == b || a == kNoColor || b == kNoColor) throw PreconditionError("path type needs two colors");
    if (path.empty()) {
        if (path.start != path.end || !is_missing(path.start, a) || !is_missing(path.start, b))
            throw PreconditionError("empty path is not maximal");
        return;
    }
    Vertex cur = path.start;
    Color first = color_of_[path.edges.front()];
    if (first != a && first != b) throw PreconditionError("path edge has a foreign color");
    Color expect = first;
    for (EdgeId e : path.edges) {
        const Edge& ed = graph_->endpoints(e);
        if (color_of_[e] != expect || (ed.u != cur && ed.v != cur))
            throw PreconditionError("stale alternating path");
        cur = graph_->other(e, cur);
        expect = (expect == a) ? b : a;
    }
    if (cur != path.end) throw PreconditionError("stale alternating path");
    Color last = color_of_[path.edges.back()];
    if (!is_missing(path.start, first == a ? b : a) || !is_missing(path.end, last == a ? b : a))
        throw PreconditionError("alternating path is not maximal");
}

void PartialColoring::flip(const AlternatingPath& path)
{
    verify_path(path);
    if (path.empty()) return;
    const Color a = path.alpha;
    const Color b = path.beta;
    Color first = color_of_[path.edges.front()];
    Color last = color_of_[path.edges.back()];
    Color start_other = first == a ? b : a;
    Color end_other = last == a ? b : a;

    for (EdgeId e : path.edges) {
        const Edge& ed = graph_->endpoints(e);
        by_color_.erase(ed.u, color_of_[e]);
        by_color_.erase(ed.v, color_of_[e]);
        ops_ += 2;
    }
    for (EdgeId e : path.edges) {
        Color c = color_of_[e] == a ? b : a;
        const Edge& ed = graph_->endpoints(e);
        by_color_.insert(ed.u, c, e);
        by_color_.insert(ed.v, c, e);
        color_of_[e] = c;
        ops_ += 2;
    }
    // Interior palettes are unchanged; each endpoint trades one color.
    missing_.set(path.start, first);
    missing_.clear(path.start, start_other);
    missing_.set(path.end, last);
    missing_.clear(path.end, end_other);
    notify(path.start, first, true);
    notify(path.start, start_other, false);
    notify(path.end, last, true);
    notify(path.end, end_other, false);
}

void PartialColoring::permute_colors(std::span<const Color> perm)
{
    if (perm.size() != static_cast<std::size_t>(mu_) + 1) throw PreconditionError("permutation has wrong size");
    std::vector<char> hit(mu_ + 1, 0);
    for (Color c = 1; c <= mu_; ++c) {
        if (perm[c] < 1 || perm[c] > mu_ || hit[perm[c]]) throw PreconditionError("not a permutation");
        hit[perm[c]] = 1;
    }
    std::vector<Color> next(color_of_.size());
    for (EdgeId e = 0; e < color_of_.size(); ++e) next[e] = color_of_[e] == kNoColor ? kNoColor : perm[color_of_[e]];
    rebuild(next);
}

void PartialColoring::attach(PaletteObserver* observer)
{
    if (observer_ && observer_ != observer) throw PreconditionError("coloring already has an observer");
    observer_ = observer;
}

void PartialColoring::detach(PaletteObserver* observer)
{
    if (observer_ == observer) observer_ = nullptr;
}

void PartialColoring::corrupt_lookup_for_testing(Vertex x, Color c, EdgeId e)
{
    EdgeId* slot = by_color_.find(x, c);
    if (slot) *slot = e;
    else by_color_.insert(x, c, e);
}

ColoringReport PartialColoring::validate() const
{
    ColoringReport report;
    const Graph& g = *graph_;
    auto add = [&](const std::string& s) {
        if (report.violations.size() < 64) report.violations.push_back(s);
    };
    std::size_t uncolored = 0;
    for (EdgeId e = 0; e < g.m(); ++e) {
        if (color_of_[e] == kNoColor) ++uncolored;
        else if (color_of_[e] > mu_) add("edge " + std::to_string(e) + " color out of range");
    }
    report.uncolored = uncolored;
    if (uncolored != uncolored_) add("uncolored counter mismatch");
    std::vector<Color> seen;
    for (Vertex x = 0; x < g.n(); ++x) {
        seen.clear();
        for (const Incidence& inc : g.incident(x)) {
            Color c = color_of_[inc.edge];
            if (c == kNoColor) continue;
            seen.push_back(c);
            const EdgeId* slot = by_color_.find(x, c);
            if (!slot || *slot != inc.edge)
                add("table entry for color " + std::to_string(c) + " at vertex " + std::to_string(x) +
                    " does not point at edge " + std::to_string(inc.edge));
        }
        std::sort(seen.begin(), seen.end());
        for (std::size_t i = 1; i < seen.size(); ++i)
            if (seen[i] == seen[i - 1])
                add("color " + std::to_string(seen[i]) + " repeated at vertex " + std::to_string(x));
        if (by_color_.size(x) != seen.size())
            add("table at vertex " + std::to_string(x) + " has stray entries");
        for (std::size_t i = 0; i < by_color_.size(x); ++i) {
            EdgeId e = by_color_.values(x)[i];
            Color c = by_color_.keys(x)[i];
            if (e >= g.m() || color_of_[e] != c) add("stale table entry at vertex " + std::to_string(x));
        }
        if (missing_.width(x) != std::min<std::size_t>(g.degree(x) + 1, mu_))
            add("truncation width wrong at vertex " + std::to_string(x));
        for (Color c = 1; c <= missing_.width(x); ++c)
            if (missing_.test(x, c) != !std::binary_search(seen.begin(), seen.end(), c))
                add("missing-set bit for color " + std::to_string(c) + " wrong at vertex " + std::to_string(x));
    }
    return report;
}

ColoringReport validate_coloring(const Graph& g, const PartialColoring& chi)
{
    if (&g != &chi.graph()) {
        ColoringReport r;
        r.violations.push_back("coloring belongs to a different graph");
        return r;
    }
    return chi.validate();
}

void write_coloring(std::ostream& out, std::span<const Color> colors)
{
    for (EdgeId e = 0; e < colors.size(); ++e) {
        out << e << ' ';
        if (colors[e] == kNoColor) out << '-';
        else out << colors[e];
        out << '\n';
    }
}

std::vector<Color> read_coloring(std::istream& in, std::size_t m)
{
    std::vector<Color> colors(m, kNoColor);
    std::vector<char> seen(m, 0);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string id_text;
        std::string color_text;
        if (!(ls >> id_text)) continue;
        if (id_text.front() == '#') continue;
        std::string extra;
        if (!(ls >> color_text) || (ls >> extra)) throw ParseError(lineno, "expected \"edge_id color\"");
        std::uint64_t id = 0;
        auto r1 = std::from_chars(id_text.data(), id_text.data() + id_text.size(), id);
        if (r1.ec != std::errc{} || r1.ptr != id_text.data() + id_text.size())
            throw ParseError(lineno, "bad edge id");
        if (id >= m) throw ParseError(lineno, "edge id " + id_text + " out of range");
        if (seen[id]) throw ParseError(lineno, "edge id " + id_text + " listed twice");
        seen[id] = 1;
        if (color_text == "-") continue;
        std::uint64_t c = 0;
        auto r2 = std::from_chars(color_text.data(), color_text.data() + color_text.size(), c);
        if (r2.ec != std::errc{} || r2.ptr != color_text.data() + color_text.size() || c == 0 ||
            c > std::numeric_limits<Color>::max())
            throw ParseError(lineno, "bad color");
        colors[id] = static_cast<Color>(c);
    }
    return colors;
}

} // namespace vizing
