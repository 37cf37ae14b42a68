#include "engel/json_io.hpp"

#include "engel/errors.hpp"
#include "engel/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cinttypes>
#include <cstdio>

namespace engel {

namespace {

std::string dec(const BigInt& v) { return to_decimal(v); }

BigInt dec_parse(const std::string& s) {
    if (s.empty() ||
        !std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; })) {
        throw parse_error("bad digit literal: " + s);
    }
    return from_decimal(s);
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

Json digits_to_json(const std::vector<BigInt>& digits) {
    Json arr = Json::array();
    for (const auto& d : digits) arr.push_back(dec(d));
    return arr;
}

std::vector<BigInt> digits_from_json(const Json& j) {
    if (!j.is_array()) throw parse_error("digit list must be a JSON array");
    std::vector<BigInt> out;
    out.reserve(j.size());
    for (const auto& e : j) {
        if (e.is_string()) out.push_back(dec_parse(e.get<std::string>()));
        else if (e.is_number_unsigned()) out.push_back(BigInt(e.get<std::uint64_t>()));
        else throw parse_error("digit entries must be decimal strings");
    }
    return out;
}

Json rational_to_json(const Rational& r) { return rational_to_string(r); }

Json cylinder_to_json(const Cylinder& c) {
    Json j;
    j["digits"] = digits_to_json(c.base.digits());
    j["left"] = c.left ? Json(rational_to_string(*c.left)) : Json(nullptr);
    j["right"] = c.right ? Json(rational_to_string(*c.right)) : Json(nullptr);
    j["length"] = c.length ? Json(rational_to_string(*c.length)) : Json(nullptr);
    j["log_length"] = c.log_length;
    return j;
}

Json pattern_to_json(const FamilySpec& spec, const PatternSeq& pseq,
                     std::uint64_t search_cap, const BCountReport& counts,
                     std::uint64_t counts_N) {
    Json j;
    j["family"] = spec.dsl();
    j["a"] = pseq.a;
    j["K"] = pseq.K;
    j["search_cap"] = search_cap;
    Json th = Json::array();
    for (const auto& t : pseq.thresholds) th.push_back(dec(t));
    j["thresholds"] = std::move(th);
    j["values"] = digits_to_json(pseq.values);
    Json prov = Json::array();
    for (const auto& p : pseq.provenance) {
        Json e;
        e["value"] = dec(p.value);
        e["k"] = p.k;
        e["f"] = p.f;
        e["t"] = dec(p.t);
        prov.push_back(std::move(e));
    }
    j["provenance"] = std::move(prov);
    Json c;
    c["N"] = counts_N;
    c["c"] = counts.counts;
    c["ok"] = counts.ok;
    c["first_fail"] = counts.first_fail;
    j["counts"] = std::move(c);
    return j;
}

Json merged_to_json(const MergedPoint& mp) {
    Json j;
    j["a"] = mp.a;
    j["seed"] = mp.seed;
    j["depth"] = mp.depth;
    j["source_digits"] = digits_to_json(mp.source.digits());
    j["inserted"] = digits_to_json(mp.inserted);
    j["merged"] = digits_to_json(mp.merged.digits());
    j["value"] = mp.value ? Json(rational_to_string(*mp.value)) : Json(nullptr);
    return j;
}

Json containment_to_json(const ContainmentReport& rep) {
    Json j;
    j["ok"] = rep.ok;
    Json ws = Json::array();
    for (const auto& w : rep.witnesses) {
        Json e;
        e["k"] = w.k;
        e["t"] = dec(w.t);
        e["values"] = digits_to_json(w.values);
        e["missing"] = digits_to_json(w.missing);
        e["present"] = w.present;
        ws.push_back(std::move(e));
    }
    j["witnesses"] = std::move(ws);
    return j;
}

Json ql_to_json(const QLReport& rep) {
    Json j;
    j["n"] = rep.n;
    j["l"] = rep.l;
    j["d1"] = dec(rep.d1);
    j["d2"] = dec(rep.d2);
    j["x_gap"] = Json{{"lo", rational_to_string(rep.x_gap_lo)},
                      {"hi", rational_to_string(rep.x_gap_hi)}};
    j["y_gap"] = Json{{"lo", rational_to_string(rep.y_gap_lo)},
                      {"hi", rational_to_string(rep.y_gap_hi)}};
    j["r"] = Json{{"lo", rep.r_lo}, {"hi", rep.r_hi}};
    j["identity"] = rep.identity;
    j["sandwiches"] = Json{{"x_upper", rep.sandwich_x_upper},
                           {"x_lower", rep.sandwich_x_lower},
                           {"y_upper", rep.sandwich_y_upper},
                           {"y_lower", rep.sandwich_y_lower}};
    j["l_bound_ok"] = rep.l_bound_ok;
    j["tail_ratio_ok"] = rep.tail_ratio_ok;
    return j;
}

Json dn_bound_to_json(const DnBoundReport& rep) {
    Json j;
    j["ok"] = rep.ok;
    Json rows = Json::array();
    for (const auto& r : rep.rows) {
        Json e;
        e["n"] = r.level;
        e["log_margin"] = r.log_margin;
        e["strictly_greater"] = r.strictly_greater;
        rows.push_back(std::move(e));
    }
    j["rows"] = std::move(rows);
    return j;
}

Json density_report_json(const DensityProfile& profile,
                         const std::vector<std::uint64_t>& windows) {
    Json j;
    j["query"] = "density";
    j["parameters"] = Json{{"windows", windows}};
    bool found = false;
    Json ws = Json::array();
    BigInt bound = 0;
    for (const auto& e : profile.entries) {
        Json w;
        w["window"] = e.window;
        w["start"] = dec(e.start);
        w["count"] = e.count;
        w["density"] = e.density;
        ws.push_back(std::move(w));
        if (e.density == 1.0) found = true;
        if (e.start > bound) bound = e.start;
    }
    j["found"] = found; // some window is completely filled
    j["witness"] = std::move(ws);
    j["bound_searched"] = dec(bound);
    return j;
}

Json progression_report_json(const std::string& query, const ProgressionResult& r,
                             const BigInt& bound_searched) {
    Json j;
    j["query"] = query;
    j["parameters"] =
        Json{{query == "gp" ? "q" : "d", dec(r.step)}};
    j["found"] = r.length >= 1;
    if (r.length >= 1) {
        j["witness"] = Json{{"start", dec(r.start)}, {"length", r.length}};
    } else {
        j["witness"] = nullptr;
    }
    j["bound_searched"] = dec(bound_searched);
    return j;
}

Json search_report_json(const std::string& query, const Json& parameters,
                        const DetectResult& r) {
    Json j;
    j["query"] = query;
    j["parameters"] = parameters;
    j["found"] = r.found;
    j["witness"] = r.found ? Json(dec(r.witness)) : Json(nullptr);
    j["bound_searched"] = dec(r.bound_searched);
    return j;
}

std::string dim_report_csv(const DimReport& rep) {
    std::string out = "n,L_n,A_n,length_ratio,dn_margin\n";
    for (const auto& r : rep.rows) {
        out += std::to_string(r.n);
        out += ',';
        out += fmt_double(r.L);
        out += ',';
        out += fmt_double(r.A);
        out += ',';
        out += fmt_double(r.length_ratio);
        out += ',';
        out += fmt_double(r.dn_margin);
        out += '\n';
    }
    return out;
}

std::string json_bytes(const Json& j) { return j.dump(2) + "\n"; }

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string digest_hex(std::string_view bytes) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016" PRIx64, fnv1a64(bytes));
    return buf;
}

Json make_manifest(const std::string& command, const Json& parameters,
                   std::string_view output_bytes) {
    Json j;
    j["command"] = command;
    j["parameters"] = parameters;
    j["version"] = ENGEL_VERSION_STRING;
    j["output_digest"] = digest_hex(output_bytes);
    return j;
}

namespace {

bool type_matches(const Json& v, const std::string& t) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "integer") return v.is_number_integer() || v.is_number_unsigned();
    if (t == "number") return v.is_number();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    return false;
}

bool validate_at(const Json& value, const Json& schema, const std::string& path,
                 std::string* why) {
    auto fail = [&](const std::string& reason) {
        if (why) *why = path + ": " + reason;
        return false;
    };
    if (schema.contains("type")) {
        const Json& t = schema["type"];
        bool ok = false;
        if (t.is_string()) {
            ok = type_matches(value, t.get<std::string>());
        } else if (t.is_array()) {
            for (const auto& alt : t) {
                if (alt.is_string() && type_matches(value, alt.get<std::string>())) {
                    ok = true;
                    break;
                }
            }
        }
        if (!ok) return fail("type mismatch");
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& alt : schema["enum"]) {
            if (value == alt) {
                ok = true;
                break;
            }
        }
        if (!ok) return fail("value not in enum");
    }
    if (value.is_object() && schema.contains("required")) {
        for (const auto& req : schema["required"]) {
            if (!value.contains(req.get<std::string>())) {
                return fail("missing required key " + req.get<std::string>());
            }
        }
    }
    if (value.is_object() && schema.contains("properties")) {
        for (auto it = schema["properties"].begin(); it != schema["properties"].end();
             ++it) {
            if (value.contains(it.key()) &&
                !validate_at(value[it.key()], it.value(), path + "/" + it.key(), why)) {
                return false;
            }
        }
    }
    if (value.is_array() && schema.contains("items")) {
        std::size_t i = 0;
        for (const auto& e : value) {
            if (!validate_at(e, schema["items"], path + "/" + std::to_string(i), why)) {
                return false;
            }
            ++i;
        }
    }
    return true;
}

} // namespace

bool validate_schema(const Json& value, const Json& schema, std::string* why) {
    return validate_at(value, schema, "$", why);
}

} // namespace engel
