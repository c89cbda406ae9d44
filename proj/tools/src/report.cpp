#include "diffcert/cli/report.hpp"

namespace diffcert::cli {

namespace {

std::string scalar(const nlohmann::ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "none";
    return v.dump();
}

bool is_scalar(const nlohmann::ordered_json& v) { return !v.is_object() && !v.is_array(); }

}  // namespace

std::string render_text(const nlohmann::ordered_json& node, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    std::string out;
    if (node.is_object()) {
        for (const auto& [key, value] : node.items()) {
            if (is_scalar(value)) {
                out += pad + key + ": " + scalar(value) + "\n";
            } else if (value.empty()) {
                out += pad + key + ": " + (value.is_array() ? "[]" : "{}") + "\n";
            } else {
                out += pad + key + ":\n" + render_text(value, indent + 2);
            }
        }
    } else if (node.is_array()) {
        for (const auto& item : node) {
            if (is_scalar(item)) {
                out += pad + "- " + scalar(item) + "\n";
            } else {
                // nested objects are introduced by a bare dash
                out += pad + "-\n" + render_text(item, indent + 2);
            }
        }
    } else {
        out += pad + scalar(node) + "\n";
    }
    return out;
}

std::string render_report(const nlohmann::ordered_json& body, const nlohmann::ordered_json& footer,
                          ReportFormat format) {
    if (format == ReportFormat::json) {
        nlohmann::ordered_json all = body;
        if (!footer.empty()) all["footer"] = footer;
        return all.dump(2) + "\n";
    }
    std::string out = render_text(body);
    if (!footer.empty()) out += "--\n" + render_text(footer);
    return out;
}

}  // namespace diffcert::cli
