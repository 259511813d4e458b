#pragma once

#include "rdnet/certify.hpp"
#include "rdnet/monitors.hpp"
#include "rdnet/network.hpp"
#include "rdnet/stoich.hpp"
#include "rdnet/trajectory.hpp"

#include <json.hpp>

#include <string>

// JSON and CSV renderings. Rationals are written as "p/q" strings, except the
// conservation vector, whose entries are [numerator, denominator] pairs.
namespace rdnet::io {

using Json = nlohmann::ordered_json;

Json to_json(const stoich::StoichMatrix& m);
Json to_json(const stoich::ConservationResult& r);
Json to_json(const stoich::SortOutcome& s);
Json to_json(const stoich::QuasiPositivityReport& q);
Json to_json(const certify::Certificate& c);
Json to_json(const certify::BootstrapTrace& t);
Json to_json(const monitors::NormReport& r, const NetworkSpec& spec);

/// Full analysis document: species, matrix, conservation, quasi_positivity, sort.
Json analysis_json(const NetworkSpec& spec, std::size_t qp_samples, std::uint64_t qp_seed);

/// One row per (time, metric): t,metric,species,value.
std::string norm_report_csv(const monitors::NormReport& r, const NetworkSpec& spec);

/// Long form t,species,cell,value for every sample and cell.
std::string trajectory_csv(const Trajectory& traj, const NetworkSpec& spec);

/// t,species,min,max,mean per sample.
std::string trajectory_summary_csv(const Trajectory& traj, const NetworkSpec& spec);

/// Per-step diagnostics: step,t,dt,min_c,conserved_total.
std::string diagnostics_csv(const Trajectory& traj);

/// Shortest round-trip decimal for a double.
std::string format_double(double v);

} // namespace rdnet::io
