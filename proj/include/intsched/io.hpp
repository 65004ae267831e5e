// JSON instance and schedule files, flag parsing helpers and report digests.
//
// Instance files:
//   {"format": "rai", "machines": m, "jobs": [{"id", "size", "first", "last"}]}
//   {"format": "restricted", "machines": m, "jobs": [{"id", "size", "eligible": [...]}]}
//   {"format": "resource", "resources": R, "machines": [[cap...], ...],
//    "jobs": [{"id", "size", "demand": [...]}]}
// Integers that fit in int64 are JSON numbers, larger ones decimal strings.
// Schedule files: {"schedule": [machine of job 0, machine of job 1, ...]}.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "intsched/core.hpp"

namespace intsched::io {

using Json = nlohmann::ordered_json;
using AnyInstance = std::variant<RestrictedInstance, ResourceInstance, RaiInstance>;

/// Malformed input text or JSON (as opposed to a well-formed but invalid instance).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An output file could not be written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path);                     // ParseError when unreadable
void write_file(const std::string& path, const std::string& text);  // IoError on failure

Json parse_json(const std::string& text);

Json integer_json(const Integer& value);
Integer parse_integer(const Json& value, const std::string& where);

/// "a/b" or "a"; never decimals. Throws std::invalid_argument.
Rational parse_rational(const std::string& text);
std::string rational_text(const Rational& value);

/// ParseError for malformed documents, InvalidInstance for bad values.
AnyInstance parse_instance(const Json& doc);
Json serialize_instance(const AnyInstance& inst);
const char* format_name(const AnyInstance& inst);

RestrictedInstance restricted_view(const AnyInstance& inst);
/// The interval form, or nothing when the eligibility sets are not intervals.
std::optional<RaiInstance> interval_view(const AnyInstance& inst);

Schedule parse_schedule(const Json& doc);
Json serialize_schedule(const Schedule& sched);

/// Lower-case hex SHA-256 of the text.
std::string sha256_hex(const std::string& text);
/// Digest of the canonical serialization.
std::string instance_digest(const AnyInstance& inst);

}  // namespace intsched::io
