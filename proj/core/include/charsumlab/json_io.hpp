#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "charsumlab/field.hpp"
#include "charsumlab/harness.hpp"
#include "charsumlab/sets.hpp"

namespace csl {

// Shares one field instance per modulus across repeated parses.
class FieldCache {
public:
    FieldPtr get(std::uint64_t p);

private:
    std::map<std::uint64_t, FieldPtr> fields_;
};

// Set descriptions:
//   {"p": 101, "elements": [1, 2, 3]}
//   {"p": 101, "gap": {"a0": 0, "gens": [1], "H": [10]}}
// A nonzero expected_p must match the description's modulus.
FpSet set_from_json_text(const std::string& text, FieldCache& cache,
                         std::uint64_t expected_p = 0);

// A bare progression object {"a0": .., "gens": [..], "H": [..]} over the
// given modulus (an optional "p" key must agree with it).
Gap gap_from_json_text(const std::string& text, FieldCache& cache, std::uint64_t p);

// Sweep configuration; keys: "primes", "family-A", "family-B" (one family
// object or an array), optional "d" (default 2), "C_of_K" (default 1.0),
// "seed" (default 0).
ExperimentConfig config_from_json_text(const std::string& text);

// Whole-file read, errors carrying the path.
std::string read_text_file(const std::string& path);

}  // namespace csl
