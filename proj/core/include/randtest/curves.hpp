#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace randtest::curves {

enum class Figure { const_ucl, linear_ucl, opt_lambda, detect_prob };
enum class Format { csv, json };

const char* figure_name(Figure f);
std::optional<Figure> figure_from_name(std::string_view name);

// Deterministic plot-ready dataset for the named figure; floating values are
// rendered with 12 significant digits.
std::string generate(Figure figure, Format format);

}  // namespace randtest::curves
