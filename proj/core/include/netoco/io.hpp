#pragma once

#include <iosfwd>
#include <string>

#include "netoco/experiments.hpp"
#include "netoco/generators.hpp"
#include "netoco/graph.hpp"
#include "netoco/instance.hpp"
#include "netoco/lpc.hpp"
#include "netoco/solver.hpp"
#include "netoco/theory.hpp"

namespace netoco {

inline constexpr const char* kInstanceSchema = "netoco-instance/1";
inline constexpr const char* kReportSchema = "netoco-report/1";

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// One edge "u v" per line; '#' starts a comment. An optional first line
// "vertices N" fixes the vertex count, otherwise it is max index + 1.
Network parse_edge_list(const std::string& text);

// {"n": V, "edges": [[u, v], ...]} or {"type": "path"|"cycle"|"grid"|"star"|"complete"|"ring_of_blocks"|"edges", ...}
Network network_from_json(const std::string& json);
std::string network_to_json(const Network& net);

// Infinite box bounds are written as null.
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& json);

// Builds an instance from a config object: either {"file": path} or a
// generator description {"graph": {...}, "horizon", "dim", "constants",
// "seed", "options"}, or {"pricing": {...}} for a pricing instance.
Instance instance_from_config(const std::string& json);

// Either explicit arrays with the PricingParams field names, or
// {"random": {"horizon", "seed", ...RandomPricingOptions fields}}.
PricingParams pricing_params_from_json(const std::string& json, const Network& net);

// Converts a TOML document to the equivalent JSON text.
std::string toml_to_json(const std::string& toml);
// Reads a .toml or .json file and returns JSON text.
std::string read_config(const std::string& path);

// t, v, dim, value
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
// t, hitting, switching
void write_costs_csv(std::ostream& os, const Trajectory& traj);
std::string trajectory_json(const Trajectory& traj);

std::string constants_json(const DecayParams& p, int k, int r);

// JSON reports carry "schema": kReportSchema and a "checks" array.
std::string report_json(const PerturbationSweep& s, const std::string& config_echo = "{}");
std::string report_json(const CrSweep& s, const std::string& config_echo = "{}");
std::string report_json(const SpatialLowerReport& s, const std::string& config_echo = "{}");
std::string report_json(const PricingReport& s, const std::string& config_echo = "{}");
std::string report_json(const AccumulationVerdict& a, const PerStepVerdict& p,
                        const std::string& config_echo = "{}");

void write_perturbation_csv(std::ostream& os, const PerturbationSweep& s);
void write_cr_csv(std::ostream& os, const CrSweep& s);
void write_estimator_csv(std::ostream& os, const SpatialLowerReport& s);

}  // namespace netoco
