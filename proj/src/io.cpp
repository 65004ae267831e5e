#include "intsched/io.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <openssl/evp.h>

namespace intsched::io {

namespace {

const Json& field(const Json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) throw ParseError(where + " must be an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(where + " lacks \"" + key + "\"");
    return *it;
}

std::size_t parse_index(const Json& value, const std::string& where) {
    const Integer v = parse_integer(value, where);
    if (sgn(v) < 0 || !v.fits_ulong_p()) throw ParseError(where + " must be a non-negative index");
    return static_cast<std::size_t>(v.get_ui());
}

const Json& array_field(const Json& obj, const char* key, const std::string& where) {
    const Json& arr = field(obj, key, where);
    if (!arr.is_array()) throw ParseError(where + "." + key + " must be an array");
    return arr;
}

std::vector<Integer> parse_integer_vector(const Json& arr, const std::string& where) {
    if (!arr.is_array()) throw ParseError(where + " must be an array");
    std::vector<Integer> out;
    for (std::size_t k = 0; k < arr.size(); ++k) out.push_back(parse_integer(arr[k], where + "[" + std::to_string(k) + "]"));
    return out;
}

Json integer_vector_json(const std::vector<Integer>& values) {
    Json arr = Json::array();
    for (const Integer& v : values) arr.push_back(integer_json(v));
    return arr;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    if (!out) throw IoError("failed writing " + path);
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

Json integer_json(const Integer& value) {
    if (value.fits_slong_p()) return Json(static_cast<std::int64_t>(value.get_si()));
    return Json(value.get_str());
}

Integer parse_integer(const Json& value, const std::string& where) {
    if (value.is_number_integer()) {
        if (value.is_number_unsigned()) return Integer(std::to_string(value.get<std::uint64_t>()));
        return Integer(std::to_string(value.get<std::int64_t>()));
    }
    if (value.is_string()) {
        const std::string text = value.get<std::string>();
        const std::size_t start = (!text.empty() && text[0] == '-') ? 1 : 0;
        if (text.size() == start || text.find_first_not_of("0123456789", start) != std::string::npos) {
            throw ParseError(where + " is not an integer string: \"" + text + "\"");
        }
        return Integer(text);
    }
    throw ParseError(where + " must be an integer");
}

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    auto digits = [](const std::string& s, bool allow_sign) {
        const std::size_t start = (allow_sign && !s.empty() && s[0] == '-') ? 1 : 0;
        return s.size() > start && s.find_first_not_of("0123456789", start) == std::string::npos;
    };
    const std::string num = text.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!digits(num, true) || !digits(den, false)) {
        throw std::invalid_argument("expected a rational a/b, got \"" + text + "\"");
    }
    const Integer d(den);
    if (sgn(d) == 0) throw std::invalid_argument("zero denominator in \"" + text + "\"");
    Rational out(Integer(num), d);
    out.canonicalize();
    return out;
}

std::string rational_text(const Rational& value) { return value.get_str(); }

AnyInstance parse_instance(const Json& doc) {
    const Json& format = field(doc, "format", "instance");
    if (!format.is_string()) throw ParseError("instance.format must be a string");
    const std::string kind = format.get<std::string>();
    const Json& jobs = array_field(doc, "jobs", "instance");

    if (kind == "rai" || kind == "restricted") {
        const std::size_t machines = parse_index(field(doc, "machines", "instance"), "instance.machines");
        if (kind == "rai") {
            std::vector<RaiJob> out;
            for (std::size_t k = 0; k < jobs.size(); ++k) {
                const std::string where = "jobs[" + std::to_string(k) + "]";
                out.push_back({parse_index(field(jobs[k], "id", where), where + ".id"),
                               parse_integer(field(jobs[k], "size", where), where + ".size"),
                               parse_index(field(jobs[k], "first", where), where + ".first"),
                               parse_index(field(jobs[k], "last", where), where + ".last")});
            }
            return RaiInstance(machines, std::move(out));
        }
        std::vector<RestrictedJob> out;
        for (std::size_t k = 0; k < jobs.size(); ++k) {
            const std::string where = "jobs[" + std::to_string(k) + "]";
            const Json& elig = array_field(jobs[k], "eligible", where);
            std::vector<MachineId> eligible;
            for (std::size_t e = 0; e < elig.size(); ++e) eligible.push_back(parse_index(elig[e], where + ".eligible"));
            out.push_back({parse_index(field(jobs[k], "id", where), where + ".id"),
                           parse_integer(field(jobs[k], "size", where), where + ".size"), std::move(eligible)});
        }
        return RestrictedInstance(machines, std::move(out));
    }
    if (kind == "resource") {
        const std::size_t resources = parse_index(field(doc, "resources", "instance"), "instance.resources");
        const Json& machines = array_field(doc, "machines", "instance");
        std::vector<std::vector<Integer>> capacities;
        for (std::size_t i = 0; i < machines.size(); ++i) {
            capacities.push_back(parse_integer_vector(machines[i], "machines[" + std::to_string(i) + "]"));
        }
        std::vector<ResourceJob> out;
        for (std::size_t k = 0; k < jobs.size(); ++k) {
            const std::string where = "jobs[" + std::to_string(k) + "]";
            out.push_back({parse_index(field(jobs[k], "id", where), where + ".id"),
                           parse_integer(field(jobs[k], "size", where), where + ".size"),
                           parse_integer_vector(field(jobs[k], "demand", where), where + ".demand")});
        }
        return ResourceInstance(resources, std::move(capacities), std::move(out));
    }
    throw ParseError("unknown instance format \"" + kind + "\" (rai|restricted|resource)");
}

Json serialize_instance(const AnyInstance& inst) {
    Json doc;
    doc["format"] = format_name(inst);
    if (const auto* rai = std::get_if<RaiInstance>(&inst)) {
        doc["machines"] = rai->machine_count();
        Json jobs = Json::array();
        for (const RaiJob& job : rai->jobs()) {
            jobs.push_back({{"id", job.id}, {"size", integer_json(job.size)}, {"first", job.first}, {"last", job.last}});
        }
        doc["jobs"] = std::move(jobs);
    } else if (const auto* res = std::get_if<RestrictedInstance>(&inst)) {
        doc["machines"] = res->machine_count();
        Json jobs = Json::array();
        for (const RestrictedJob& job : res->jobs()) {
            jobs.push_back({{"id", job.id}, {"size", integer_json(job.size)}, {"eligible", job.eligible}});
        }
        doc["jobs"] = std::move(jobs);
    } else {
        const auto& rr = std::get<ResourceInstance>(inst);
        doc["resources"] = rr.resource_count();
        Json machines = Json::array();
        for (const auto& cap : rr.capacities()) machines.push_back(integer_vector_json(cap));
        doc["machines"] = std::move(machines);
        Json jobs = Json::array();
        for (const ResourceJob& job : rr.jobs()) {
            jobs.push_back({{"id", job.id}, {"size", integer_json(job.size)}, {"demand", integer_vector_json(job.demand)}});
        }
        doc["jobs"] = std::move(jobs);
    }
    return doc;
}

const char* format_name(const AnyInstance& inst) {
    if (std::holds_alternative<RaiInstance>(inst)) return "rai";
    if (std::holds_alternative<RestrictedInstance>(inst)) return "restricted";
    return "resource";
}

RestrictedInstance restricted_view(const AnyInstance& inst) {
    if (const auto* rai = std::get_if<RaiInstance>(&inst)) return rai_to_restricted(*rai);
    if (const auto* res = std::get_if<RestrictedInstance>(&inst)) return *res;
    return resource_to_restricted(std::get<ResourceInstance>(inst));
}

std::optional<RaiInstance> interval_view(const AnyInstance& inst) {
    if (const auto* rai = std::get_if<RaiInstance>(&inst)) return *rai;
    return as_interval(restricted_view(inst));
}

Schedule parse_schedule(const Json& doc) {
    const Json& arr = doc.is_array() ? doc : array_field(doc, "schedule", "schedule file");
    if (!arr.is_array()) throw ParseError("schedule must be an array");
    Schedule sched;
    for (std::size_t k = 0; k < arr.size(); ++k) {
        sched.assignment.push_back(parse_index(arr[k], "schedule[" + std::to_string(k) + "]"));
    }
    return sched;
}

Json serialize_schedule(const Schedule& sched) {
    Json doc;
    doc["schedule"] = sched.assignment;
    return doc;
}

std::string sha256_hex(const std::string& text) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 failed");
    }
    std::ostringstream out;
    for (unsigned int k = 0; k < len; ++k) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[k]);
    return out.str();
}

std::string instance_digest(const AnyInstance& inst) { return sha256_hex(serialize_instance(inst).dump()); }

}  // namespace intsched::io
