#include <gtest/gtest.h>

#include <limits>
#include <random>
#include <set>

#include "graphseg/agglomerate.hpp"
#include "graphseg/error.hpp"
#include "test_support.hpp"

using namespace graphseg;
using graphseg::testing::component_sizes;
using graphseg::testing::induced_mst_max;
using graphseg::testing::naive_all_pairs;
using graphseg::testing::naive_segment;
using graphseg::testing::random_image;
using graphseg::testing::same_partition;
using graphseg::testing::uniform_image;

namespace {

struct Prepared {
  ImageF smoothed;
  EdgeList edges;
};

Prepared prepare(const Image8& img, double sigma) {
  Prepared p{gaussian_smooth(img, {sigma}), {}};
  p.edges = build_edges(p.smoothed);
  sort_edges(p.edges);
  return p;
}

std::vector<VertexId> segment(const Prepared& p, double k, std::size_t min_size) {
  ComponentForest f(p.smoothed.pixel_count(), k);
  threshold_pass(f, p.edges, k);
  minsize_pass(f, p.edges, min_size);
  return extract_result(f, p.smoothed.width(), p.smoothed.height()).labels;
}

std::vector<VertexId> members(const ComponentForest& f, VertexId root) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < f.vertex_count(); ++v) {
    VertexId r = v;
    while (f.parent(r) != r) r = f.parent(r);
    if (r == root) out.push_back(v);
  }
  return out;
}

Image8 checkerboard(int w, int h) {
  Image8 img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::uint8_t v = (x + y) % 2 ? 255 : 0;
      for (int c = 0; c < 3; ++c) img.at(x, y, c) = v;
    }
  }
  return img;
}

}  // namespace

TEST(ThresholdPass, UniformImageBecomesOneComponent) {
  for (double k : {0.5, 300.0}) {
    const auto p = prepare(uniform_image(7, 5, 10, 20, 30), 0.8);
    EXPECT_EQ(component_sizes(segment(p, k, 1)), (std::vector<std::size_t>{35}));
  }
}

TEST(ThresholdPass, ZeroKOnDistinctNeighborsKeepsEveryPixel) {
  // Distinct colors per pixel, sigma 0: every weight is positive.
  Image8 img(6, 4);
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 6; ++x) img.at(x, y, 0) = static_cast<std::uint8_t>(10 * (y * 6 + x));
  }
  const auto p = prepare(img, 0.0);
  ComponentForest f(24, 0.0);
  EXPECT_EQ(threshold_pass(f, p.edges, 0.0), 0u);
  EXPECT_EQ(f.component_count(), 24u);
}

TEST(ThresholdPass, TwoPixelsMergeExactlyAtEquality) {
  Image8 img(2, 1);
  img.at(1, 0, 0) = 3;
  img.at(1, 0, 1) = 4;
  const auto p = prepare(img, 0.0);
  ASSERT_EQ(p.edges.size(), 1u);
  ASSERT_EQ(p.edges[0].w, 5.0f);
  ComponentForest below(2, 4.9);
  threshold_pass(below, p.edges, 4.9);
  EXPECT_EQ(below.component_count(), 2u);
  ComponentForest at(2, 5.0);
  threshold_pass(at, p.edges, 5.0);
  EXPECT_EQ(at.component_count(), 1u);
  EXPECT_DOUBLE_EQ(at.threshold(at.find(0)), 5.0 + 5.0 / 2.0);
}

TEST(ThresholdPass, MatchesNaiveOracleOnRandomFourByFour) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 100; ++i) {
    const auto img = random_image(rng, 4, 4);
    for (double k : {10.0, 100.0, 1000.0}) {
      const auto p = prepare(img, 0.8);
      ASSERT_TRUE(same_partition(segment(p, k, 1), naive_segment(p.smoothed, k, 1))) << "instance " << i << " k=" << k;
    }
  }
}

TEST(ThresholdPass, RejectsUnsortedEdges) {
  ComponentForest f(3, 1.0);
  const EdgeList edges{{0, 1, 2.0f}, {1, 2, 1.0f}};
  EXPECT_THROW(threshold_pass(f, edges, 1.0), ContractViolation);
}

TEST(ThresholdPass, MergeWeightsAreNonDecreasing) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    const auto p = prepare(random_image(rng, 12, 12), 0.8);
    ComponentForest f(144, 500.0);
    float last = -1.0f;
    threshold_pass(f, p.edges, 500.0, [&](const MergeEvent& m) {
      ASSERT_GE(m.edge.w, last);
      last = m.edge.w;
    });
  }
}

TEST(ThresholdPass, StoredThresholdIsMstMaxPlusTau) {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> dim(2, 6);
  for (int i = 0; i < 40; ++i) {
    const auto p = prepare(random_image(rng, dim(rng), dim(rng)), 0.8);
    for (double k : {10.0, 150.0, 2000.0}) {
      ComponentForest f(p.smoothed.pixel_count(), k);
      threshold_pass(f, p.edges, k, [&](const MergeEvent& m) {
        const auto comp = members(f, m.survivor);
        ASSERT_EQ(comp.size(), f.size(m.survivor));
        const double expected = static_cast<double>(induced_mst_max(p.smoothed, comp)) + k / static_cast<double>(comp.size());
        ASSERT_EQ(f.threshold(m.survivor), expected);
      });
    }
  }
}

TEST(ThresholdPass, MergesExactlyWhenPredicateSaysNoBoundary) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dim(2, 5);
  for (int i = 0; i < 30; ++i) {
    const auto p = prepare(random_image(rng, dim(rng), dim(rng)), 0.8);
    const auto all = naive_all_pairs(p.smoothed);
    const double k = 50.0 + 100.0 * i;
    ComponentForest f(p.smoothed.pixel_count(), k);
    for (const Edge& e : p.edges) {
      const VertexId ra = f.find(e.a);
      const VertexId rb = f.find(e.b);
      bool expect_merge = false;
      if (ra != rb) {
        const auto ma = members(f, ra);
        const auto mb = members(f, rb);
        float dif = std::numeric_limits<float>::infinity();
        for (const Edge& g : all) {
          const VertexId ga = f.find(g.a), gb = f.find(g.b);
          if ((ga == ra && gb == rb) || (ga == rb && gb == ra)) dif = std::min(dif, g.w);
        }
        const double mint = std::min(induced_mst_max(p.smoothed, ma) + k / static_cast<double>(ma.size()),
                                     induced_mst_max(p.smoothed, mb) + k / static_cast<double>(mb.size()));
        expect_merge = !(static_cast<double>(dif) > mint);
      }
      const std::size_t merged = threshold_pass(f, std::span<const Edge>(&e, 1), k);
      ASSERT_EQ(merged == 1, expect_merge);
    }
  }
}

TEST(MinsizePass, MinSizeOneChangesNothing) {
  std::mt19937_64 rng(8);
  const auto p = prepare(random_image(rng, 8, 8), 0.8);
  ComponentForest f(64, 100.0);
  threshold_pass(f, p.edges, 100.0);
  const ComponentForest before = f;
  EXPECT_EQ(minsize_pass(f, p.edges, 1), 0u);
  EXPECT_EQ(f, before);
}

TEST(MinsizePass, MinSizeAtLeastImageGivesOneComponent) {
  std::mt19937_64 rng(9);
  const auto p = prepare(random_image(rng, 7, 5), 0.8);
  for (std::size_t min_size : {35u, 36u, 1000u}) {
    ComponentForest f(35, 0.0);
    threshold_pass(f, p.edges, 0.0);
    minsize_pass(f, p.edges, min_size);
    EXPECT_EQ(f.component_count(), 1u);
  }
}

TEST(MinsizePass, CheckerboardMatchesOracle) {
  const auto p = prepare(checkerboard(4, 4), 0.0);
  const auto labels = segment(p, 0.0, 2);
  EXPECT_TRUE(same_partition(labels, naive_segment(p.smoothed, 0.0, 2)));
  for (const auto size : component_sizes(labels)) EXPECT_GE(size, 2u);
}

TEST(MinsizePass, EnforcesFloorAndOnlyCoarsens) {
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> dim(1, 14);
  for (int i = 0; i < 60; ++i) {
    const int w = dim(rng), h = dim(rng);
    const auto p = prepare(random_image(rng, w, h), 0.8);
    const std::size_t min_size = 1 + rng() % 20;
    ComponentForest f(p.smoothed.pixel_count(), 80.0);
    threshold_pass(f, p.edges, 80.0);
    const auto before = extract_result(f, w, h).labels;
    minsize_pass(f, p.edges, min_size);
    const auto after = extract_result(f, w, h).labels;
    for (const auto size : component_sizes(after)) ASSERT_GE(size, std::min<std::size_t>(min_size, p.smoothed.pixel_count()));
    for (std::size_t a = 0; a < before.size(); ++a) {
      for (std::size_t b = a + 1; b < before.size(); ++b) {
        if (before[a] == before[b]) ASSERT_EQ(after[a], after[b]);
      }
    }
  }
}

TEST(ExtractResult, FreshForestLabelsThemselves) {
  ComponentForest f(6, 1.0);
  const auto r = extract_result(f, 3, 2);
  EXPECT_EQ(r.component_count, 6u);
  for (VertexId v = 0; v < 6; ++v) EXPECT_EQ(r.labels[v], v);
}

TEST(ExtractResult, SingleComponentSharesOneLabel) {
  ComponentForest f(4, 1.0);
  f.join(f.join(0, 1, 0), f.join(2, 3, 0), 0);
  const auto r = extract_result(f, 2, 2);
  EXPECT_EQ(r.component_count, 1u);
  for (VertexId v = 0; v < 4; ++v) EXPECT_EQ(r.labels[v], r.labels[0]);
}

TEST(ExtractResult, LabelsMatchFindAndAreRoots) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    ComponentForest f(30, 0.0);
    for (int step = 0; step < 20; ++step) {
      const VertexId a = f.find(static_cast<VertexId>(rng() % 30)), b = f.find(static_cast<VertexId>(rng() % 30));
      if (a != b) f.join(a, b, 0.0);
    }
    const auto r = extract_result(f, 6, 5);
    std::set<VertexId> distinct(r.labels.begin(), r.labels.end());
    EXPECT_EQ(distinct.size(), r.component_count);
    for (VertexId a = 0; a < 30; ++a) {
      ASSERT_EQ(r.labels[r.labels[a]], r.labels[a]);
      for (VertexId b = 0; b < 30; ++b) ASSERT_EQ(r.labels[a] == r.labels[b], f.find(a) == f.find(b));
    }
  }
}

TEST(SegParams, Validation) {
  EXPECT_NO_THROW((SegParams{300, 50, 0.8}.validate()));
  EXPECT_THROW((SegParams{-1, 50, 0.8}.validate()), ParameterError);
  EXPECT_THROW((SegParams{300, 0, 0.8}.validate()), ParameterError);
  EXPECT_THROW((SegParams{300, 50, -0.1}.validate()), ParameterError);
}
