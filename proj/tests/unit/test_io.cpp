#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include <netoco/error.hpp>
#include <netoco/io.hpp>

using namespace netoco;
using nlohmann::json;

TEST(EdgeList, ParsesCommentsAndDeclaredVertices) {
  Network net = parse_edge_list("# a path\nvertices 5\n0 1\n1 2 # inline\n\n2 3\n");
  EXPECT_EQ(net.vertex_count(), 5);
  EXPECT_EQ(net.edge_count(), 3);
  EXPECT_FALSE(net.connected());
  EXPECT_THROW(parse_edge_list("0 x\n"), ParseError);
  EXPECT_THROW(parse_edge_list("0 1 2\n"), ParseError);
}

TEST(NetworkJson, Families) {
  EXPECT_EQ(network_from_json(R"({"type":"cycle","n":7})").edge_count(), 7);
  EXPECT_EQ(network_from_json(R"({"type":"grid","rows":2,"cols":3})").edge_count(), 7);
  EXPECT_EQ(network_from_json(R"({"type":"ring_of_blocks","blocks":5,"block_size":2})").vertex_count(), 10);
  EXPECT_EQ(network_from_json(R"({"n":3,"edges":[[0,1],[1,2]]})").diameter(), 2);
  EXPECT_THROW(network_from_json(R"({"type":"torus","n":3})"), ParseError);
  EXPECT_THROW(network_from_json(R"({"type":"cycle"})"), ParseError);
  EXPECT_THROW(network_from_json("{not json"), ParseError);
}

TEST(NetworkJson, RoundTrip) {
  Network a = grid_graph(3, 4);
  Network b = network_from_json(network_to_json(a));
  ASSERT_EQ(a.edge_count(), b.edge_count());
  for (int e = 0; e < a.edge_count(); ++e) {
    EXPECT_EQ(a.edge(e).u, b.edge(e).u);
    EXPECT_EQ(a.edge(e).v, b.edge(e).v);
  }
}

TEST(InstanceJson, RoundTripIsExact) {
  Instance a = random_instance(cycle_graph(5), 3, 2, {1.0, 2.0, 0.3, 0.2}, 4, {.signed_spatial = true});
  Instance b = instance_from_json(instance_to_json(a));
  ASSERT_EQ(b.horizon(), 3);
  for (int t = 1; t <= 3; ++t) {
    for (int v = 0; v < 5; ++v) {
      EXPECT_EQ(a.node_cost(t, v).hessian(), b.node_cost(t, v).hessian());
      EXPECT_EQ(a.node_cost(t, v).linear(), b.node_cost(t, v).linear());
      EXPECT_EQ(a.temporal_cost(t, v).hessian(), b.temporal_cost(t, v).hessian());
      EXPECT_EQ(a.box(t, v).lower(), b.box(t, v).lower());
    }
    for (int e = 0; e < 5; ++e) EXPECT_EQ(a.spatial_cost(t, e).hessian(), b.spatial_cost(t, e).hessian());
  }
  EXPECT_EQ(a.x0(), b.x0());
}

TEST(InstanceJson, UnboundedBoxesUseNull) {
  Instance a = random_instance(path_graph(3), 2, 1, {1.0, 2.0, 0.1, 0.1}, 1, {.unbounded = true});
  json j = json::parse(instance_to_json(a));
  EXPECT_TRUE(j["steps"][0]["boxes"][0]["lower"][0].is_null());
  Instance b = instance_from_json(j.dump());
  EXPECT_FALSE(b.box(1, 0).bounded());
}

TEST(InstanceJson, RejectsWrongSchema) {
  Instance a = random_instance(path_graph(3), 2, 1, {1.0, 2.0, 0.1, 0.1}, 1);
  json j = json::parse(instance_to_json(a));
  j["schema"] = "something-else/9";
  EXPECT_THROW(instance_from_json(j.dump()), ParseError);
  j = json::parse(instance_to_json(a));
  j["steps"].erase(1);
  EXPECT_THROW(instance_from_json(j.dump()), ParseError);
}

TEST(Config, GeneratorFormMatchesDirectCall) {
  Instance a = instance_from_config(R"({"graph":{"type":"cycle","n":6},"horizon":4,"dim":2,
      "constants":{"mu":1,"ell_f":2,"ell_T":0.25,"ell_S":0.125},"seed":9,"options":{"center_spread":1.5}})");
  Instance b = random_instance(cycle_graph(6), 4, 2, {1.0, 2.0, 0.25, 0.125}, 9, {.center_spread = 1.5});
  for (int t = 1; t <= 4; ++t)
    for (int v = 0; v < 6; ++v) EXPECT_EQ(a.theta(t, v), b.theta(t, v));
}

TEST(Config, TomlMatchesJson) {
  std::string toml = R"(
horizon = 4
dim = 1
seed = 2

[graph]
type = "path"
n = 5

[constants]
mu = 1.0
ell_f = 2.0
ell_T = 0.25
ell_S = 0.125
)";
  json j = json::parse(toml_to_json(toml));
  EXPECT_EQ(j["graph"]["type"], "path");
  EXPECT_EQ(j["horizon"], 4);
  Instance a = instance_from_config(j.dump());
  EXPECT_EQ(a.vertex_count(), 5);
  EXPECT_THROW(toml_to_json("x = [1,"), ParseError);
}

TEST(Config, PricingRandomForm) {
  Network net = path_graph(4);
  PricingParams p = pricing_params_from_json(R"({"random":{"horizon":3,"seed":5}})", net);
  PricingParams q = random_pricing_params(net, 3, 5);
  EXPECT_EQ(p.a, q.a);
  EXPECT_EQ(p.eta_forward, q.eta_forward);
}

TEST(Files, ReadConfigByExtension) {
  auto dir = std::filesystem::temp_directory_path();
  auto toml = (dir / "netoco_io_test.toml").string();
  auto js = (dir / "netoco_io_test.json").string();
  write_file(toml, "horizon = 3\n");
  write_file(js, R"({"horizon": 3})");
  EXPECT_EQ(json::parse(read_config(toml))["horizon"], 3);
  EXPECT_EQ(json::parse(read_config(js))["horizon"], 3);
  std::remove(toml.c_str());
  std::remove(js.c_str());
  EXPECT_THROW(read_file((dir / "netoco_missing_file").string()), ParseError);
}

TEST(Reports, SchemaKindAndChecks) {
  Instance inst = random_instance(cycle_graph(6), 5, 1, {1.0, 2.0, 0.1, 0.05}, 3);
  CrSweep s = cr_sweep(inst, {2, 3}, {1, 2});
  json j = json::parse(report_json(s, R"({"seed":3})"));
  EXPECT_EQ(j["schema"], "netoco-report/1");
  EXPECT_EQ(j["config"]["seed"], 3);
  ASSERT_TRUE(j["checks"].is_array());
  EXPECT_EQ(j["checks"].size(), 3u);

  std::ostringstream csv;
  write_cr_csv(csv, s);
  std::string text = csv.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);
}

TEST(Reports, TrajectoryCsv) {
  Instance inst = random_instance(path_graph(2), 2, 2, {1.0, 2.0, 0.1, 0.1}, 3);
  Trajectory tr = offline_opt(inst).trajectory;
  std::ostringstream os;
  write_trajectory_csv(os, tr);
  std::string text = os.str();
  EXPECT_EQ(text.substr(0, 14), "t,v,dim,value\n");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1 + 3 * 2 * 2);
  json tj = json::parse(trajectory_json(tr));
  EXPECT_TRUE(tj.is_object());
}
