#include <gtest/gtest.h>

#include "support.hpp"
#include "vizing/baseline.hpp"
#include "vizing/ufan_build.hpp"

using namespace vizing;

namespace {

struct Outcome {
    BuildOutcome out;
    std::size_t before = 0;
    std::size_t after = 0;
    bool valid = false;
};

Outcome build_on(const Graph& g, std::vector<Color> colors, Color mu, fuzz::Rng& rng)
{
    PartialColoring chi(g, mu, colors);
    SeparableCollection fans(chi);
    std::vector<EdgeId> open = chi.uncolored_edges();
    std::shuffle(open.begin(), open.end(), rng);
    Outcome o;
    o.before = chi.uncolored_count();
    o.out = build_ufans(fans, open);
    o.after = chi.uncolored_count();
    o.valid = validate_coloring(g, chi).ok() && fans.validate().ok();
    EXPECT_EQ(o.out.fan_count, fans.size());
    return o;
}

void expect_contract(const Outcome& o)
{
    std::size_t need = (o.out.lambda + kBuildRatio - 1) / kBuildRatio;
    EXPECT_TRUE(o.valid);
    EXPECT_LE(o.after, o.before);
    EXPECT_EQ(o.before - o.after, o.out.extended_count);
    EXPECT_GE(std::max(o.out.extended_count, o.out.fan_count), need);
    EXPECT_LE(o.out.operations, o.out.budget);
}

} // namespace

TEST(BuildUfans, MatchingInRegularGraph)
{
    fuzz::Rng rng(3);
    for (int round = 0; round < 20; ++round) {
        std::size_t d = 4 + rng() % 28;
        Graph g = gen_random_regular(200, d + (d % 2), rng());
        std::vector<Color> colors = classical_color_edges(g);
        std::vector<char> hit(g.n(), 0);
        for (EdgeId e = 0; e < g.m(); ++e) {
            auto [a, b] = g.endpoints(e);
            if (!hit[a] && !hit[b] && rng() % 3 == 0) {
                hit[a] = hit[b] = 1;
                colors[e] = kNoColor;
            }
        }
        expect_contract(build_on(g, colors, static_cast<Color>(g.max_degree() + 1), rng));
    }
}

TEST(BuildUfans, SingleEdgeWithSharedMissingColor)
{
    Graph g = gen_path(3);
    PartialColoring chi(g, 3, std::vector<Color>{1, kNoColor});
    SeparableCollection fans(chi);
    std::vector<EdgeId> open{1};
    BuildOutcome o = build_ufans(fans, open);
    EXPECT_EQ(o.tag, BuildOutcome::Tag::Extended);
    EXPECT_EQ(o.extended_count, 1u);
    EXPECT_EQ(chi.uncolored_count(), 0u);
}

TEST(BuildUfans, TwoEdgesShareLeafColor)
{
    // Center 0 misses {3,4,5}; leaves 1 and 2 both miss {1,2}.
    std::vector<Edge> e{{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 5}, {1, 6}, {1, 7}, {2, 8}, {2, 9}, {2, 10}};
    Graph g(11, e);
    std::vector<Color> c{0, 0, 1, 2, 3, 4, 5, 3, 4, 5};
    PartialColoring chi(g, 5, c);
    SeparableCollection fans(chi);
    std::vector<EdgeId> open{0, 1};
    BuildOutcome o = build_ufans(fans, open);
    EXPECT_EQ(o.tag, BuildOutcome::Tag::Built);
    ASSERT_EQ(fans.size(), 1u);
    const UFan& f = fans.fan(fans.ids().front());
    EXPECT_EQ(f.center, 0u);
    EXPECT_FALSE(f.damaged());
    EXPECT_TRUE(fans.validate().ok());
}

TEST(BuildUfans, FuzzedPartialColorings)
{
    fuzz::Rng rng(17);
    for (int round = 0; round < 60; ++round) {
        Graph g = fuzz::fuzz_graph(rng, 400, 40, 4000);
        if (g.m() == 0) continue;
        Color mu = static_cast<Color>(g.max_degree() + 1);
        std::vector<Color> colors = classical_color_edges(g);
        for (Color& c : colors)
            if (rng() % 4 == 0) c = kNoColor;
        expect_contract(build_on(g, colors, mu, rng));
    }
}

TEST(BuildUfans, DenseUncoloredShare)
{
    fuzz::Rng rng(29);
    for (int round = 0; round < 20; ++round) {
        fuzz::FanState s = fuzz::make_built_state(300, 16 + rng() % 32, 0.5, 0, rng());
        EXPECT_TRUE(s.fans->validate().ok());
        EXPECT_TRUE(validate_coloring(*s.graph, *s.chi).ok());
    }
}
