#pragma once

// Text front end: polynomials in z, y1..y9; operators in z and D; vector
// fields "y1' = y2; y2' = z*y1"; series expressions in z, u1, u2, exp and int(...).

#include "diffcert/exact.hpp"
#include "diffcert/linode.hpp"
#include "diffcert/mpoly.hpp"
#include "diffcert/truncseries.hpp"
#include "diffcert/vfield.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace diffcert::cli {

class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& what, std::vector<std::string> expected = {});

    int line() const { return line_; }
    int column() const { return column_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    int line_;
    int column_;
    std::vector<std::string> expected_;
};

/// nvars is the larger of `min_nvars` and the highest y index used.
MultiPoly parse_polynomial(std::string_view text, std::size_t min_nvars = 0);
DiffOperator parse_operator(std::string_view text);
PolyVectorField parse_field(std::string_view text);

/// Comma-separated series expressions, each known through z^order.
std::vector<TruncSeries> parse_series_list(std::string_view text, int order);

/// airy2, airy3, airy-u2, airy-double, painleve2-u2
std::optional<PolyVectorField> named_field(std::string_view name);
std::vector<std::string> named_field_names();
/// A named field or an inline definition.
PolyVectorField field_argument(std::string_view text);

}  // namespace diffcert::cli
