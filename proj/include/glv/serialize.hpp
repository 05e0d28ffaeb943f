#ifndef GLV_SERIALIZE_HPP
#define GLV_SERIALIZE_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "glv/balance.hpp"
#include "glv/dynamics.hpp"
#include "glv/egraph.hpp"
#include "glv/realization.hpp"
#include "glv/simulate.hpp"

namespace glv {

using json = nlohmann::ordered_json;

/// Graph file: {"dimension": n, "vertices": [[...], ...],
///              "edges": [{"src": i, "dst": j, "weight": w}, ...]}, 0-based.
/// Readers reject NaN/Inf and malformed documents with errc::parse_error.
EGraph graph_from_json(const json& j);
json graph_to_json(const EGraph& g);

/// System file: {"dimension": n, "terms": [{"exponent": [...], "coeffs": [...]}]}.
GlvSystem system_from_json(const json& j);
json system_to_json(const GlvSystem& sys);

json structural_report_to_json(const StructuralReport& rep);
json balance_certificate_to_json(const BalanceCertificate& cert);
json stiemke_certificate_to_json(const StiemkeCertificate& cert);

/// cmd_balance payload: whichever certificate exists, else "undetermined"
/// with the residuals both attempts produced.
json balance_outcome_to_json(const EGraph& g, double tol = 1e-8);

json realization_report_to_json(const RealizationResult& result);
json infeasibility_to_json(const Infeasibility& inf);

/// CSV rows `t,x1..xn,xi1..xin,lyapunov,cons_1..cons_k` at full precision.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
json trajectory_summary_to_json(const Trajectory& traj);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);
std::string dump_json(const json& j);

EGraph load_graph(const std::string& path);
GlvSystem load_system(const std::string& path);

/// Vertex list file: either a bare [[...], ...] array or {"vertices": [...]}.
Eigen::MatrixXd vertices_from_json(const json& j, int expected_dim);

} // namespace glv

#endif
