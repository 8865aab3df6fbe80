#pragma once

#include <string>

#include "pmin/classifier.hpp"
#include "pmin/verifier.hpp"

namespace pmin {

/// JSON documents for the analysis artifacts. Key order and float rendering
/// are deterministic so identical inputs give byte-identical outputs.
std::string analysis_to_json_text(const AnalysisReport& report);
std::string classification_to_json_text(const Classification& cls);
std::string residual_report_to_json_text(const ResidualReport& report, double legendrian);
std::string golden_report_to_json_text(const GoldenReport& report);
std::string containment_to_json_text(const ContainmentReport& report);

}  // namespace pmin
