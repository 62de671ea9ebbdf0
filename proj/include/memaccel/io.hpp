#pragma once

// JSON and CSV forms of the library's values. Every number is written with 12
// significant digits.

#include "memaccel/accel.hpp"
#include "memaccel/certify.hpp"

#include <json.hpp>

#include <string>

namespace memaccel {

/// printf("%.12g").
[[nodiscard]] std::string format_number(double v);
/// v rounded to the 12 significant digits it is printed with.
[[nodiscard]] double printed(double v);

/// {"M": k, "alpha": a, "betas": [...]}, values rounded to printed precision.
[[nodiscard]] nlohmann::json to_json(const Gains& g);
/// Throws ParseError on a malformed document (AlphaZero for alpha = 0).
[[nodiscard]] Gains gains_from_json(const nlohmann::json& j);
[[nodiscard]] Gains load_gains_file(const std::string& path);
/// g with every value replaced by its printed form, so that writing and
/// re-reading it is exact.
[[nodiscard]] Gains printed(const Gains& g);

[[nodiscard]] nlohmann::json to_json(const GuaranteeReport& r, bool with_samples = false);
/// Header lambda,max_root_modulus.
[[nodiscard]] std::string samples_csv(const GuaranteeReport& r);

[[nodiscard]] nlohmann::json to_json(const TuningResult& t);
[[nodiscard]] nlohmann::json to_json(const SearchResult& r);

[[nodiscard]] nlohmann::json to_json(Complex z);
[[nodiscard]] nlohmann::json to_json(const ClaimCoeffs& c);
[[nodiscard]] nlohmann::json to_json(const SpecialCaseResult& r);
[[nodiscard]] nlohmann::json to_json(const WitnessReport& r);
/// Window metadata plus row-major type_mask and phase_match arrays.
[[nodiscard]] nlohmann::json to_json(const PartitionField& f);

[[nodiscard]] const char* to_string(SpecialCase kind) noexcept;

}  // namespace memaccel
