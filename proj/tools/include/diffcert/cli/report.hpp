#pragma once

#include <json.hpp>

#include <string>

namespace diffcert::cli {

enum class ReportFormat { text, json };

/// The body is rendered first; a non-empty `footer` follows after a separator
/// (text) or under the key "footer" (json).
std::string render_report(const nlohmann::ordered_json& body, const nlohmann::ordered_json& footer,
                          ReportFormat format);

std::string render_text(const nlohmann::ordered_json& node, int indent = 0);

}  // namespace diffcert::cli
