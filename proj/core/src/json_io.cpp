#include "charsumlab/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace csl {

namespace {

using nlohmann::json;

json parse_or_throw(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string(what) + ": invalid JSON: " + e.what());
    }
}

std::uint64_t u64_value(const json& j, const std::string& key) {
    if (!j.is_number_integer() && !j.is_number_unsigned())
        throw std::invalid_argument("field '" + key + "' must be an integer");
    if (j.is_number_integer() && j.get<std::int64_t>() < 0)
        throw std::invalid_argument("field '" + key + "' must be nonnegative");
    return j.get<std::uint64_t>();
}

std::uint64_t u64_field(const json& j, const std::string& key) {
    if (!j.contains(key)) throw std::invalid_argument("missing field '" + key + "'");
    return u64_value(j.at(key), key);
}

std::vector<std::uint64_t> u64_list(const json& j, const std::string& key) {
    if (!j.contains(key) || !j.at(key).is_array())
        throw std::invalid_argument("field '" + key + "' must be an array");
    std::vector<std::uint64_t> out;
    out.reserve(j.at(key).size());
    for (const auto& v : j.at(key)) out.push_back(u64_value(v, key));
    return out;
}

Gap gap_from_json(const json& j, FieldPtr field) {
    Gap g;
    g.field = std::move(field);
    g.base = u64_field(j, "a0");
    g.gens = u64_list(j, "gens");
    g.bounds = u64_list(j, "H");
    std::uint64_t p = g.field->p();
    if (g.base >= p) throw std::invalid_argument("gap base a0 must be a residue below p");
    for (auto& x : g.gens) {
        if (x >= p) throw std::invalid_argument("gap generators must be residues below p");
    }
    g.validate();
    return g;
}

SetFamilySpec family_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw std::invalid_argument("family spec needs a string field 'kind'");
    std::string kind = j.at("kind").get<std::string>();
    SetFamilySpec s;
    if (kind == "interval") {
        s.kind = SetFamilySpec::Kind::interval;
        if (j.contains("length")) s.length = u64_field(j, "length");
        if (j.contains("exponent")) s.exponent = j.at("exponent").get<double>();
        if (s.length == 0 && s.exponent < 0)
            throw std::invalid_argument("interval family needs 'length' or 'exponent'");
        return s;
    }
    if (kind == "gap" || kind == "random-subset-of-gap") {
        s.kind = kind == "gap" ? SetFamilySpec::Kind::gap
                               : SetFamilySpec::Kind::random_subset_of_gap;
        s.base = u64_field(j, "a0");
        s.gens = u64_list(j, "gens");
        s.bounds = u64_list(j, "H");
        if (s.gens.empty() || s.gens.size() != s.bounds.size())
            throw std::invalid_argument("gap family needs matching nonempty 'gens' and 'H'");
        if (s.kind == SetFamilySpec::Kind::random_subset_of_gap) {
            if (!j.contains("density"))
                throw std::invalid_argument("random-subset-of-gap needs 'density'");
            s.density = j.at("density").get<double>();
            if (!(s.density > 0.0) || s.density > 1.0)
                throw std::invalid_argument("density must be in (0, 1]");
        }
        return s;
    }
    if (kind == "subgroup") {
        s.kind = SetFamilySpec::Kind::subgroup;
        s.order = u64_field(j, "order");
        if (s.order == 0) throw std::invalid_argument("subgroup order must be positive");
        return s;
    }
    throw std::invalid_argument("unknown family kind '" + kind + "'");
}

std::vector<SetFamilySpec> family_list_from_json(const json& j, const std::string& key) {
    if (!j.contains(key)) throw std::invalid_argument("missing field '" + key + "'");
    const json& v = j.at(key);
    std::vector<SetFamilySpec> out;
    if (v.is_array()) {
        for (const auto& e : v) out.push_back(family_from_json(e));
    } else {
        out.push_back(family_from_json(v));
    }
    if (out.empty()) throw std::invalid_argument("field '" + key + "' must not be empty");
    return out;
}

}  // namespace

FieldPtr FieldCache::get(std::uint64_t p) {
    auto it = fields_.find(p);
    if (it != fields_.end()) return it->second;
    FieldPtr f = PrimeField::make(p);
    fields_.emplace(p, f);
    return f;
}

FpSet set_from_json_text(const std::string& text, FieldCache& cache, std::uint64_t expected_p) {
    json j = parse_or_throw(text, "set");
    if (!j.is_object()) throw std::invalid_argument("set description must be a JSON object");
    std::uint64_t p = u64_field(j, "p");
    if (expected_p != 0 && p != expected_p)
        throw std::invalid_argument("set is over p=" + std::to_string(p) + ", expected p=" +
                                    std::to_string(expected_p));
    FieldPtr f = cache.get(p);
    bool has_elements = j.contains("elements");
    bool has_gap = j.contains("gap");
    if (has_elements == has_gap)
        throw std::invalid_argument("set needs exactly one of 'elements' or 'gap'");
    if (has_elements) return FpSet(f, u64_list(j, "elements"));
    return gap_enumerate(gap_from_json(j.at("gap"), f)).set;
}

Gap gap_from_json_text(const std::string& text, FieldCache& cache, std::uint64_t p) {
    json j = parse_or_throw(text, "gap");
    if (!j.is_object()) throw std::invalid_argument("gap description must be a JSON object");
    if (j.contains("p") && u64_field(j, "p") != p)
        throw std::invalid_argument("gap modulus disagrees with p=" + std::to_string(p));
    return gap_from_json(j, cache.get(p));
}

ExperimentConfig config_from_json_text(const std::string& text) {
    json j = parse_or_throw(text, "config");
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    ExperimentConfig cfg;
    cfg.primes = u64_list(j, "primes");
    cfg.d = j.contains("d") ? static_cast<std::uint32_t>(u64_field(j, "d")) : 2;
    cfg.family_a = family_list_from_json(j, "family-A");
    cfg.family_b = family_list_from_json(j, "family-B");
    if (j.contains("C_of_K")) {
        cfg.c_of_k = j.at("C_of_K").get<double>();
        if (!(cfg.c_of_k > 0)) throw std::invalid_argument("C_of_K must be positive");
    }
    if (j.contains("seed")) cfg.seed = u64_field(j, "seed");
    return cfg;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw std::runtime_error("read failed for " + path);
    return ss.str();
}

}  // namespace csl
