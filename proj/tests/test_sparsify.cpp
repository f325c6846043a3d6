#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "support.hpp"
#include "vizing/sparsify.hpp"

using namespace vizing;

namespace {

// mu = 200, eta = 10: r = 10, block i holds 10(i-1)+1 .. 10i.
Color C(unsigned block, Color j) { return (block - 1) * 10 + j; }

UFan typed(Color a, Color b) { return {0, 1, 2, a, b, b}; }

struct Fixture {
    Fixture(std::size_t n, std::vector<Edge> edges, std::vector<Color> colors, Color mu)
        : g(n, std::move(edges)), chi(g, mu, colors), fans(chi)
    {
    }
    Graph g;
    PartialColoring chi;
    SeparableCollection fans;
};

std::size_t social_count(const SeparableCollection& fans, const ColorPartition& part)
{
    std::size_t n = 0;
    for (FanId id : fans.ids()) n += classify_fan(fans.fan(id), part).social();
    return n;
}

std::vector<char> colored_mask(const PartialColoring& chi)
{
    std::vector<char> out(chi.graph().m());
    for (EdgeId e = 0; e < out.size(); ++e) out[e] = chi.is_colored(e);
    return out;
}

} // namespace

TEST(Partition, Formula)
{
    ColorPartition p = build_partition(200, 10);
    EXPECT_EQ(p.r(), 10u);
    EXPECT_EQ(p.q(), 200u);
    EXPECT_EQ(p.color_at(3, 7), 27u);
    EXPECT_EQ(p.block_of(21), 3u);
    EXPECT_EQ(p.block_of(30), 3u);
    EXPECT_EQ(p.block_of(31), 4u);
    EXPECT_EQ(p.pair_range(2), (std::pair<Color, Color>{21, 40}));
    EXPECT_LE(2 * p.r() * p.eta(), p.mu());
}

TEST(Partition, RemainderOutsideBlocks)
{
    ColorPartition p = build_partition(205, 10);
    EXPECT_EQ(p.r(), 10u);
    EXPECT_EQ(p.q(), 200u);
    for (Color c = 201; c <= 205; ++c) EXPECT_EQ(p.block_of(c), 0u);
}

TEST(Partition, EtaOutOfRange)
{
    EXPECT_THROW(build_partition(100, 11), PreconditionError);
    EXPECT_THROW(build_partition(100, 9), PreconditionError);
    EXPECT_NO_THROW(build_partition(100, 10));
}

TEST(Classify, Kinds)
{
    ColorPartition p = build_partition(200, 10);
    EXPECT_EQ(classify_fan(typed(C(3, 1), C(3, 5)), p).kind, FanKind::Uniform);
    FanClass aligned = classify_fan(typed(C(6, 9), C(5, 2)), p);
    EXPECT_EQ(aligned.kind, FanKind::Aligned);
    EXPECT_EQ(aligned.pair, 3u);
    FanClass non = classify_fan(typed(C(1, 2), C(4, 2)), p);
    EXPECT_EQ(non.kind, FanKind::NonSocial);
    EXPECT_EQ(non.lo, 1u);
    EXPECT_EQ(non.hi, 4u);
    EXPECT_EQ(classify_fan(typed(C(2, 1), C(3, 1)), p).kind, FanKind::NonSocial);
    ColorPartition q = build_partition(205, 10);
    EXPECT_EQ(classify_fan(typed(203, 4), q).kind, FanKind::OutOfRange);
}

TEST(Relabel, ConcentratedTypeMovesToFront)
{
    // Three fans of type {7, 9} at distinct centers.
    std::vector<Edge> e;
    for (Vertex c = 0; c < 3; ++c) {
        e.push_back({3 * c, 3 * c + 1});
        e.push_back({3 * c, 3 * c + 2});
    }
    Fixture fx(9, e, std::vector<Color>(6, kNoColor), 100);
    for (Vertex c = 0; c < 3; ++c) ASSERT_TRUE(fx.fans.insert({3 * c, 3 * c + 1, 3 * c + 2, 7, 9, 9}));
    RelabelPlan plan = relabel_colors(fx.fans);
    EXPECT_EQ(plan.permutation[7], 1u);
    EXPECT_EQ(plan.permutation[9], 2u);
    EXPECT_EQ(plan.frequency[7], 3u);
    ColorPartition part = build_partition(100, 10);
    for (FanId id : fx.fans.ids()) EXPECT_NE(classify_fan(fx.fans.fan(id), part).kind, FanKind::OutOfRange);
    EXPECT_TRUE(fx.fans.validate().ok());
}

TEST(Relabel, IdentityWhenSorted)
{
    Fixture fx(4, {{0, 1}, {0, 2}, {1, 3}}, {0, 0, 3}, 10);
    ASSERT_TRUE(fx.fans.insert({0, 1, 2, 1, 2, 2}));
    std::vector<Color> before = fx.chi.colors();
    RelabelPlan plan = relabel_colors(fx.fans);
    for (Color c = 1; c <= 10; ++c) EXPECT_EQ(plan.permutation[c], c);
    EXPECT_EQ(fx.chi.colors(), before);
}

TEST(Relabel, DisjointTypesKeepThreeFifths)
{
    for (std::size_t lambda : {50u, 55u, 97u, 150u}) {
        Color mu = static_cast<Color>(2 * lambda);
        fuzz::FanState s =
            fuzz::make_fan_state({400, 4, lambda, mu, fuzz::FanColors::Spread, 0}, lambda);
        ColorPartition part = build_partition(mu, 10);
        relabel_colors(*s.fans);
        std::size_t inside = 0;
        for (FanId id : s.fans->ids()) inside += classify_fan(s.fans->fan(id), part).kind != FanKind::OutOfRange;
        EXPECT_GE(inside * 5, 3 * s.fans->size()) << "lambda " << lambda;
        EXPECT_TRUE(validate_coloring(*s.graph, *s.chi).ok());
        EXPECT_TRUE(s.fans->validate().ok());
    }
}

TEST(RelevantType, CanonicalMapping)
{
    ColorPartition p = build_partition(200, 10);
    UFan f{0, 1, 2, C(1, 4), C(4, 6), C(4, 6)};
    // k = 5: blocks 1 -> 9 and 4 -> 10.
    EXPECT_EQ(relevant_type(f, 0, 5, p), (std::pair<Color, Color>{C(1, 4), C(9, 4)}));
    EXPECT_EQ(relevant_type(f, 1, 5, p), (std::pair<Color, Color>{C(4, 6), C(10, 6)}));
    // k = 2 with hi == 4 == 2k: block 4 stays, block 1 -> 3.
    EXPECT_FALSE(relevant_type(f, 1, 2, p));
    EXPECT_EQ(relevant_type(f, 0, 2, p), (std::pair<Color, Color>{C(1, 4), C(3, 4)}));
    // k = 1 with lo == 1 == 2k-1: block 1 stays, block 4 -> 2.
    EXPECT_FALSE(relevant_type(f, 0, 1, p));
    EXPECT_EQ(relevant_type(f, 2, 1, p), (std::pair<Color, Color>{C(4, 6), C(2, 6)}));
    // Swap branch: lo == 2k.
    UFan g{0, 1, 2, C(6, 2), C(2, 3), C(2, 3)};
    EXPECT_EQ(relevant_type(g, 0, 1, p), (std::pair<Color, Color>{C(6, 2), C(1, 2)}));
    EXPECT_FALSE(relevant_type(g, 1, 1, p));
}

TEST(ComputePaths, ThreeDistinctPaths)
{
    // Isolated cherry: every relevant path is empty and sits at its own vertex.
    Fixture fx(3, {{0, 1}, {0, 2}}, {0, 0}, 200);
    auto id = fx.fans.insert({0, 1, 2, C(1, 3), C(4, 5), C(4, 5)});
    ColorPartition p = build_partition(200, 10);
    std::vector<AlternatingPath> paths = compute_paths(fx.fans, *id, 5, p);
    ASSERT_EQ(paths.size(), 3u);
    EXPECT_EQ(std::minmax(paths[0].alpha, paths[0].beta), std::minmax(C(9, 3), C(1, 3)));
    EXPECT_EQ(std::minmax(paths[1].alpha, paths[1].beta), std::minmax(C(10, 5), C(4, 5)));
}

TEST(ComputePaths, SwapBranch)
{
    Fixture fx(3, {{0, 1}, {0, 2}}, {0, 0}, 200);
    // Center in block 4 = 2k for k = 2: the center keeps its block, leaves go to 3.
    auto id = fx.fans.insert({0, 1, 2, C(4, 1), C(7, 2), C(7, 2)});
    ColorPartition p = build_partition(200, 10);
    std::vector<AlternatingPath> paths = compute_paths(fx.fans, *id, 2, p);
    ASSERT_EQ(paths.size(), 2u);
    for (const AlternatingPath& q : paths) EXPECT_EQ(std::minmax(q.alpha, q.beta), std::minmax(C(3, 2), C(7, 2)));
}

TEST(ComputePaths, SharedLeafPath)
{
    // Leaves joined by an edge colored with the leaves' target color.
    Fixture fx(3, {{0, 1}, {0, 2}, {1, 2}}, {0, 0, C(10, 5)}, 200);
    auto id = fx.fans.insert({0, 1, 2, C(1, 3), C(4, 5), C(4, 5)});
    ASSERT_TRUE(id);
    ColorPartition p = build_partition(200, 10);
    std::vector<AlternatingPath> paths = compute_paths(fx.fans, *id, 5, p);
    EXPECT_EQ(paths.size(), 2u);
}

TEST(ComputePaths, RejectsSocial)
{
    Fixture fx(3, {{0, 1}, {0, 2}}, {0, 0}, 200);
    auto id = fx.fans.insert({0, 1, 2, C(3, 1), C(4, 1), C(4, 1)});
    EXPECT_THROW(compute_paths(fx.fans, *id, 1, build_partition(200, 10)), PreconditionError);
}

TEST(FindKBad, NoSocialFans)
{
    fuzz::FanState s = fuzz::make_fan_state(
        {300, 6, 40, fuzz::disjoint_mu(40), fuzz::FanColors::Disjoint, 0}, 1);
    ColorPartition p = build_partition(s.chi->mu(), 10);
    for (unsigned k = 1; k <= 10; ++k) EXPECT_TRUE(find_k_bad(*s.fans, k, p).empty());
}

TEST(FindKBad, AlignedFanBlocksNeighbors)
{
    // Aligned fan g = (0; 1, 2) with c(0) = C(1,1). Fans f_t centered at 3+2t
    // use leaf colors in block 3 and a {C(3,1), C(1,1)} path from leaf to 0.
    ColorPartition p = build_partition(200, 10);
    std::vector<Edge> e{{0, 1}, {0, 2}};
    std::vector<Color> c{0, 0};
    Vertex next = 3;
    std::vector<UFan> others;
    for (unsigned t = 0; t < 3; ++t) {
        Vertex u = next++, v = next++, w = next++, hop = next++;
        e.push_back({u, v});
        c.push_back(0);
        e.push_back({u, w});
        c.push_back(0);
        e.push_back({v, hop});
        c.push_back(C(1, 1));
        e.push_back({hop, 0});
        c.push_back(C(3 + 2 * t, 1));
        others.push_back({u, v, w, C(6, 4 + t), C(3 + 2 * t, 1), C(3 + 2 * t, 1)});
    }
    Fixture fx(next, e, c, 200);
    auto g = fx.fans.insert({0, 1, 2, C(1, 1), C(2, 1), C(2, 1)});
    ASSERT_TRUE(g);
    std::vector<FanId> ids;
    for (const UFan& f : others) {
        auto id = fx.fans.insert(f);
        ASSERT_TRUE(id);
        ids.push_back(*id);
    }
    // k = 1 moves leaf colors C(3, 1) and C(5, 1) to C(1, 1) along paths ending at 0.
    std::vector<FanId> bad = find_k_bad(fx.fans, 1, p);
    std::vector<FanId> brute = fuzz::brute_k_bad(fx.fans, 1, p);
    EXPECT_EQ(bad, brute);
    EXPECT_TRUE(std::binary_search(bad.begin(), bad.end(), *g));
    EXPECT_TRUE(std::binary_search(bad.begin(), bad.end(), ids[0]));
    EXPECT_TRUE(std::binary_search(bad.begin(), bad.end(), ids[1]));
    // Block 7 sits above block 6, so f_2's leaves head for block 2 instead.
    EXPECT_FALSE(std::binary_search(bad.begin(), bad.end(), ids[2]));
    EXPECT_EQ(bad.size(), 3u);
}

TEST(FindKBad, MatchesBruteForce)
{
    fuzz::Rng rng(61);
    std::size_t compared = 0, nonempty = 0;
    for (int round = 0; round < 30; ++round) {
        fuzz::FanStateSpec spec{25 + rng() % 20, 3 + rng() % 4, 25, 100, fuzz::FanColors::Random, 0};
        fuzz::FanState s = fuzz::make_fan_state(spec, rng());
        ASSERT_LE(s.graph->m(), 200u);
        ColorPartition p = build_partition(100, 10);
        for (unsigned k = 1; k <= 10; ++k) {
            std::vector<FanId> fast = find_k_bad(*s.fans, k, p);
            ASSERT_EQ(fast, fuzz::brute_k_bad(*s.fans, k, p)) << "round " << round << " k " << k;
            ++compared;
            nonempty += fast.size() > social_count(*s.fans, p);
        }
    }
    EXPECT_GT(nonempty, 0u) << "oracle never exercised a non-social bad fan";
}

TEST(ModifyTypes, SingletonBecomesAligned)
{
    fuzz::FanState s = fuzz::make_fan_state(
        {300, 8, 30, fuzz::disjoint_mu(30), fuzz::FanColors::Disjoint, 0}, 5);
    ColorPartition p = build_partition(s.chi->mu(), 10);
    FanId id = s.fans->ids().front();
    FanId one[] = {id};
    ModifyResult r = modify_types(*s.fans, one, 7, p);
    FanClass cls = classify_fan(s.fans->fan(id), p);
    EXPECT_EQ(cls.kind, FanKind::Aligned);
    EXPECT_EQ(cls.pair, 7u);
    EXPECT_LE(r.touched.size(), 3u);
    EXPECT_TRUE(validate_coloring(*s.graph, *s.chi).ok());
    EXPECT_TRUE(s.fans->validate().ok());
}

TEST(ModifyTypes, DisjointPairOfFans)
{
    Fixture fx(6, {{0, 1}, {0, 2}, {3, 4}, {3, 5}}, {0, 0, 0, 0}, 200);
    auto a = fx.fans.insert({0, 1, 2, C(1, 1), C(4, 2), C(4, 2)});
    auto b = fx.fans.insert({3, 4, 5, C(1, 3), C(4, 4), C(4, 4)});
    ColorPartition p = build_partition(200, 10);
    FanId batch[] = {*a, *b};
    ModifyResult r = modify_types(fx.fans, batch, 6, p);
    EXPECT_EQ(r.paths.size(), 6u);
    EXPECT_TRUE(r.touched.empty());
    for (FanId id : batch) {
        FanClass cls = classify_fan(fx.fans.fan(id), p);
        EXPECT_EQ(cls.kind, FanKind::Aligned);
        EXPECT_EQ(cls.pair, 6u);
    }
}

TEST(ModifyTypes, RejectsMixedBatch)
{
    Fixture fx(6, {{0, 1}, {0, 2}, {3, 4}, {3, 5}}, {0, 0, 0, 0}, 200);
    auto a = fx.fans.insert({0, 1, 2, C(1, 1), C(4, 2), C(4, 2)});
    auto b = fx.fans.insert({3, 4, 5, C(1, 3), C(5, 4), C(5, 4)});
    ColorPartition p = build_partition(200, 10);
    FanId batch[] = {*a, *b};
    EXPECT_THROW(modify_types(fx.fans, batch, 6, p), PreconditionError);
}

TEST(ModifyTypes, OrderIndependentAndDisjoint)
{
    fuzz::Rng rng(71);
    for (int round = 0; round < 20; ++round) {
        fuzz::FanState s = fuzz::make_fan_state(
            {200, 10, 60, fuzz::disjoint_mu(60), fuzz::FanColors::Disjoint, 0}, rng());
        ColorPartition p = build_partition(s.chi->mu(), 10);
        std::map<std::pair<unsigned, unsigned>, std::vector<FanId>> classes;
        for (FanId id : s.fans->ids()) {
            FanClass cls = classify_fan(s.fans->fan(id), p);
            classes[{cls.lo, cls.hi}].push_back(id);
        }
        for (const auto& [key, batch] : classes)
            for (unsigned k = 1; k <= 10; ++k) {
                ASSERT_TRUE(fuzz::disjoint_or_equal(relevant_paths(*s.fans, batch, k, p)));
                ASSERT_TRUE(fuzz::flip_order_independent(*s.fans, batch, k, p));
            }
    }
}

TEST(Sparsify, AllUniformSkipsLoop)
{
    std::vector<Edge> e;
    for (Vertex c = 0; c < 5; ++c) {
        e.push_back({3 * c, 3 * c + 1});
        e.push_back({3 * c, 3 * c + 2});
    }
    Fixture fx(15, e, std::vector<Color>(10, kNoColor), 200);
    for (Vertex c = 0; c < 5; ++c) ASSERT_TRUE(fx.fans.insert({3 * c, 3 * c + 1, 3 * c + 2, 1, 2, 2}));
    SparsifyResult r = sparsify_types(fx.fans, 10);
    EXPECT_TRUE(r.iterations.empty());
    EXPECT_EQ(fx.fans.size(), 5u);
}

TEST(Sparsify, EmptyCollection)
{
    Fixture fx(3, {{0, 1}, {0, 2}}, {0, 0}, 200);
    SparsifyResult r = sparsify_types(fx.fans, 10);
    EXPECT_EQ(r.lambda, 0u);
    EXPECT_THROW(sparsify_types(fx.fans, 30), PreconditionError);
}

TEST(Sparsify, FuzzedPostconditions)
{
    fuzz::Rng rng(91);
    for (int round = 0; round < 30; ++round) {
        std::size_t lambda = 1 + rng() % 300;
        fuzz::FanColors mode = round % 3 == 0 ? fuzz::FanColors::Random : fuzz::FanColors::Disjoint;
        Color mu = mode == fuzz::FanColors::Disjoint ? fuzz::disjoint_mu(lambda) : 100;
        fuzz::FanStateSpec spec{600, 4 + rng() % 10, lambda, mu, mode, rng() % 3};
        fuzz::FanState s = fuzz::make_fan_state(spec, rng());
        std::vector<char> mask = colored_mask(*s.chi);
        std::size_t lam = s.fans->size();
        std::ostringstream trace;
        SparsifyOptions opts;
        opts.trace = &trace;
        SparsifyResult r = sparsify_types(*s.fans, 10, opts);
        EXPECT_EQ(colored_mask(*s.chi), mask);
        EXPECT_GE(s.fans->size() * 100, lam);
        EXPECT_EQ(social_count(*s.fans, r.partition), s.fans->size());
        EXPECT_LE(r.iterations.size(), 400u * 10 * 10);
        EXPECT_TRUE(validate_coloring(*s.graph, *s.chi).ok());
        EXPECT_TRUE(s.fans->validate().ok());
        std::size_t lines = 0;
        for (char ch : trace.str()) lines += ch == '\n';
        EXPECT_EQ(lines, r.iterations.size());
        for (const SparsifyIteration& it : r.iterations) {
            EXPECT_EQ(it.social_after, it.social_before + it.batch);
            EXPECT_LE(it.fans_before - it.fans_after, 3 * it.batch);
        }
    }
}
