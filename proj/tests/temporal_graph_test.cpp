#include <gtest/gtest.h>

#include <sstream>

#include "support/fixtures.hpp"
#include "tempo_katz/errors.hpp"
#include "tempo_katz/temporal_graph.hpp"

namespace tempo_katz {
namespace {

using testing::four_node_network;

TEST(ParseEdgeList, GroupsByTimestamp) {
  const TemporalNetwork net = parse_temporal_edgelist("0 1 1\n1 2 1\n2 3 2");
  EXPECT_EQ(net.num_nodes(), 4);
  ASSERT_EQ(net.num_snapshots(), 2u);
  EXPECT_EQ(net.snapshot(0).size(), 2u);
  EXPECT_EQ(net.snapshot(1).size(), 1u);
  EXPECT_EQ(net.timestamps(), (std::vector<Timestamp>{1, 2}));
}

TEST(ParseEdgeList, FourNodeNetwork) {
  // Labels 1..4 in the usual drawing, minus one.
  const TemporalNetwork net = parse_temporal_edgelist(
      "# t1\n3 0 10\n0 1 10\n1 2 10\n"
      "# t2\n2 1 20\n2 3 20\n"
      "# t3\n3 0 30\n0 3 30\n");
  EXPECT_EQ(net.num_nodes(), 4);
  EXPECT_EQ(net.num_snapshots(), 3u);
  EXPECT_EQ(net.num_edges(), 7u);
  EXPECT_EQ(net.snapshots(), four_node_network().snapshots());
}

TEST(ParseEdgeList, SelfLoopRejected) {
  EXPECT_THROW(parse_temporal_edgelist("0 0 1"), ValidationError);
}

TEST(ParseEdgeList, NegativeIdRejected) {
  EXPECT_THROW(parse_temporal_edgelist("0 1 1\n-1 2 1\n"), ValidationError);
}

TEST(ParseEdgeList, MalformedLineCarriesLineNumber) {
  try {
    parse_temporal_edgelist("0 1 1\n# fine\n1 x 2\n");
    FAIL() << "no exception";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_temporal_edgelist("0 1\n"), ParseError);
  EXPECT_THROW(parse_temporal_edgelist("0 1 2 3\n"), ParseError);
}

TEST(ParseEdgeList, EmptyInputRejected) {
  EXPECT_THROW(parse_temporal_edgelist("# nothing\n\n"), ValidationError);
}

TEST(ParseEdgeList, HeaderOverridesNodeCount) {
  const TemporalNetwork net = parse_temporal_edgelist("%n 10\n0 1 5\n");
  EXPECT_EQ(net.num_nodes(), 10);
  EXPECT_THROW(parse_temporal_edgelist("%n 2\n0 3 5\n"), ValidationError);
}

TEST(ParseEdgeList, DuplicatesCollapse) {
  std::istringstream in("0 1 1\n0 1 1\n1 0 1\n0 1 2\n");
  const ParsedNetwork parsed = read_temporal_edgelist(in);
  EXPECT_EQ(parsed.report.duplicates_collapsed, 1u);
  EXPECT_EQ(parsed.network.snapshot(0).size(), 2u);
  EXPECT_EQ(parsed.network.num_edges(), 3u);
}

TEST(ParseEdgeList, CrlfAndTrailingComments) {
  const TemporalNetwork net = parse_temporal_edgelist("0 1 1 # first\r\n1 2 1\r\n");
  EXPECT_EQ(net.num_edges(), 2u);
}

TEST(ParseEdgeList, UnsortedTimestampsAreOrdered) {
  const TemporalNetwork net = parse_temporal_edgelist("1 2 7\n0 1 3\n");
  EXPECT_EQ(net.timestamps(), (std::vector<Timestamp>{3, 7}));
  EXPECT_TRUE(net.snapshot(0).contains({0, 1}));
}

TEST(TemporalNetwork, Invariants) {
  EXPECT_THROW(TemporalNetwork(3, {Snapshot(), Snapshot()}, {2, 2}), ValidationError);
  EXPECT_THROW(TemporalNetwork(2, {Snapshot({{0, 2}})}), ValidationError);
  EXPECT_THROW(TemporalNetwork(2, {}), ValidationError);
  EXPECT_THROW(Snapshot({{1, 1}}), ValidationError);
}

TEST(Adjacency, ChainSnapshot) {
  const SparseMatrix a = adjacency_matrix(testing::chain_network(), 0);
  EXPECT_EQ(a.nonZeros(), 1);
  EXPECT_EQ(a.coeff(0, 1), 1.0);
}

TEST(Adjacency, EmptySnapshot) {
  const TemporalNetwork net(3, {Snapshot(), Snapshot({{0, 1}})});
  const SparseMatrix a = adjacency_matrix(net, 0);
  EXPECT_EQ(a.rows(), 3);
  EXPECT_EQ(a.nonZeros(), 0);
}

TEST(Adjacency, FourNodeFirstSnapshot) {
  const SparseMatrix a = adjacency_matrix(four_node_network(), 0);
  EXPECT_EQ(a.nonZeros(), 3);
  EXPECT_EQ(a.coeff(3, 0), 1.0);
  EXPECT_EQ(a.coeff(0, 1), 1.0);
  EXPECT_EQ(a.coeff(1, 2), 1.0);
}

TEST(Adjacency, OutOfRange) {
  EXPECT_THROW(adjacency_matrix(four_node_network(), 3), std::out_of_range);
}

TEST(Adjacency, RandomProperties) {
  std::mt19937_64 rng(testing::kSeed);
  for (int trial = 0; trial < 40; ++trial) {
    const TemporalNetwork net = testing::random_network(rng, {2, 9, 1, 4, 0.6});
    for (std::size_t tau = 0; tau < net.num_snapshots(); ++tau) {
      const DenseMatrix a(adjacency_matrix(net, tau));
      EXPECT_EQ(static_cast<std::size_t>((a.array() != 0.0).count()), net.snapshot(tau).size());
      EXPECT_TRUE(((a.array() == 0.0) || (a.array() == 1.0)).all());
      EXPECT_EQ(a.diagonal().cwiseAbs().sum(), 0.0);
    }
  }
}

TEST(EdgeListWriter, RoundTrip) {
  std::mt19937_64 rng(testing::kSeed + 1);
  for (int trial = 0; trial < 40; ++trial) {
    TemporalNetwork net = testing::random_network(rng, {2, 9, 1, 4, 0.6});
    // Snapshots with no edges cannot be written as lines, so skip them here.
    bool any_empty = false;
    for (const Snapshot& s : net.snapshots()) any_empty = any_empty || s.empty();
    if (any_empty) continue;
    std::ostringstream out;
    write_temporal_edgelist(out, net);
    EXPECT_EQ(parse_temporal_edgelist(out.str()), net);
  }
}

TEST(EdgeListWriter, KeepsIsolatedNodes) {
  const TemporalNetwork net(7, {Snapshot({{0, 1}})}, {42});
  std::ostringstream out;
  write_temporal_edgelist(out, net);
  EXPECT_EQ(parse_temporal_edgelist(out.str()), net);
}

}  // namespace
}  // namespace tempo_katz
