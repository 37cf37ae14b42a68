#pragma once

#include "engel/detectors.hpp"
#include "engel/dimension.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

namespace engel {

// Key order is preserved so that identical runs serialize to identical
// bytes (the reproducibility contract hashes the raw output).
using Json = nlohmann::ordered_json;

Json digits_to_json(const std::vector<BigInt>& digits);
std::vector<BigInt> digits_from_json(const Json& j); // throws parse_error

Json rational_to_json(const Rational& r); // "p/q" string

Json cylinder_to_json(const Cylinder& c);
Json pattern_to_json(const FamilySpec& spec, const PatternSeq& pseq,
                     std::uint64_t search_cap, const BCountReport& counts,
                     std::uint64_t counts_N);
Json merged_to_json(const MergedPoint& mp);
Json containment_to_json(const ContainmentReport& rep);
Json ql_to_json(const QLReport& rep);
Json dn_bound_to_json(const DnBoundReport& rep);

// Detector reports share one shape: {query, parameters, found, witness,
// bound_searched}.
Json density_report_json(const DensityProfile& profile,
                         const std::vector<std::uint64_t>& windows);
Json progression_report_json(const std::string& query, const ProgressionResult& r,
                             const BigInt& bound_searched);
Json search_report_json(const std::string& query, const Json& parameters,
                        const DetectResult& r);

// CSV with header n,L_n,A_n,length_ratio,dn_margin; doubles at %.12g.
std::string dim_report_csv(const DimReport& rep);

// Canonical byte encoding of a JSON document: 2-space indent, trailing
// newline.
std::string json_bytes(const Json& j);

// FNV-1a, 64-bit.
std::uint64_t fnv1a64(std::string_view bytes);
std::string digest_hex(std::string_view bytes); // "fnv1a64:" + 16 hex chars

Json make_manifest(const std::string& command, const Json& parameters,
                   std::string_view output_bytes);

// Minimal structural validation: type (string or array of strings),
// properties, required, items, enum. On failure returns false and, when
// why is non-null, stores a path-prefixed reason.
bool validate_schema(const Json& value, const Json& schema,
                     std::string* why = nullptr);

} // namespace engel
