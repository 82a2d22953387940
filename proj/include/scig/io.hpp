#pragma once

#include <string>

#include <json.hpp>

#include "scig/process.hpp"
#include "scig/roc.hpp"
#include "scig/theory.hpp"
#include "scig/types.hpp"

namespace scig {

/// 17-significant-digit decimal rendering used by every CSV writer.
std::string format_double(double x);

// Model documents. Explicit forms mirror the model fields:
//   {"type": "fir",  "taps": [...], "innovation_cov": [[...], ...]}
//   {"type": "var1", "transition": [[...], ...], "noise_var": s2}
// plus the generator recipe
//   {"type": "fir_random_cig", "p", "max_degree", "coupling", "taps", "graph_seed"}.
nlohmann::json to_json(const ProcessModel& model);
ProcessModel model_from_json(const nlohmann::json& j);

// {"kind": "rectangular"|"bartlett"|"gaussian", "support", ["width"]}
nlohmann::json to_json(const WindowFunction& window);
WindowFunction window_from_json(const nlohmann::json& j);

// {"p", "F", "grid": [...], "matrices": [[[ [re,im], ... ]]]}
nlohmann::json to_json(const HermitianMatrixSequence& seq);
HermitianMatrixSequence sdm_from_json(const nlohmann::json& j);

// {"p", "edges": [[k,l], ...]} with 1-based k < l
nlohmann::json to_json(const Graph& graph);
Graph graph_from_json(const nlohmann::json& j);

/// "k l" per line, 1-based, k < l, ascending.
std::string edge_list_text(const Graph& graph);

nlohmann::json to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const TheoremPrescription& prescription);

/// Comma-separated sample matrix, rows = time steps, columns = components.
std::string samples_csv(const Mat& samples);
Mat samples_from_csv(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// The default lambda-sweep experiment: p = 64 FIR model with a random
/// max-degree-3 CIG, length-2 filter, gaussian(44) window, F = 4,
/// eta = 0.25, M = 10 runs, 25 log-spaced multipliers in [1e-3, 1e3].
ExperimentConfig default_roc_config();

}  // namespace scig
