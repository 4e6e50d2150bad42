#include "framesmith/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "framesmith/errors.hpp"
#include "framesmith/folding.hpp"

namespace framesmith {

using Json = nlohmann::ordered_json;

std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

FamilyFile construct_family(const SpectralSpec& spec, std::string input, PartitionRule rule) {
    FamilyFile f{build_scaling(spec), build_wavelets(spec, rule), {}};
    f.provenance.input_digest = fnv1a64_hex(input);
    f.provenance.input = std::move(input);
    f.provenance.tool_version = std::string(kToolVersion);
    return f;
}

namespace {

std::string window_name(long k) {
    return "[" + std::to_string(2 * k - 1) + ", " + std::to_string(2 * k + 1) + ")";
}

/// A point where two piecewise-linear functions differ.
Rational difference_point(const PiecewiseLinear& f, const PiecewiseLinear& g) {
    const PiecewiseLinear d = f - g;
    const auto& p = d.pieces().front();
    return midpoint(p.lo, p.hi);
}

PiecewiseLinear sum_of_squares(const std::vector<SqrtProfile>& profiles) {
    PiecewiseLinear s;
    for (const auto& p : profiles) s = s + p.effective_square();
    return s;
}

}  // namespace

void validate_family(const FamilyFile& family) {
    const ScalingFamily& phi = family.scaling;
    const WaveletFamily& psi = family.wavelets;
    require_dilation(phi.dilation);
    if (psi.dilation != phi.dilation)
        throw ValidationError("one dilation for both families",
                              std::to_string(phi.dilation) + " vs " + std::to_string(psi.dilation));
    if (!(psi.sigma == phi.sigma)) throw ValidationError("one sigma for both families", "sigma differs");

    const SpectralSpec spec{phi.sigma, phi.dilation};
    const auto adm = admissibility_check(spec);
    if (const auto* c = adm.first_failure()) {
        std::string d = c->id + " (" + c->description + ")";
        if (c->witness) d += " at xi = " + c->witness->str();
        throw ValidationError("sigma admissible", d);
    }

    for (const auto& [k, p] : phi.phis) {
        const IntervalSet window = IntervalSet::single(Rational(2 * k - 1), Rational(2 * k + 1));
        if (!p.support().subtract(window).empty())
            throw ValidationError("phi_k supported in [2k - 1, 2k + 1)",
                                  "phi_" + std::to_string(k) + " leaves " + window_name(k));
    }
    const PiecewiseLinear phi_sum = sum_of_squares(phi.profiles());
    if (!(phi_sum == phi.sigma))
        throw ValidationError("sum |phi_k|^2 = sigma",
                              "differs at xi = " + difference_point(phi_sum, phi.sigma).str());

    if (psi.partition.size() != psi.psis.size())
        throw ValidationError("one partition layer per psi", std::to_string(psi.partition.size()) + " layers for " +
                                                                 std::to_string(psi.psis.size()) + " profiles");
    for (std::size_t i = 0; i < psi.psis.size(); ++i) {
        const std::string name = "psi_" + std::to_string(i);
        if (!psi.psis[i].support().subtract(psi.partition[i]).empty())
            throw ValidationError("psi_i supported in K_i", name + " leaves " + psi.partition[i].str());
        const long m = per_multiplicity(psi.partition[i]).max();
        if (m > 1)
            throw ValidationError("K_i injective mod 2",
                                  "K_" + std::to_string(i) + " has periodization " + std::to_string(m));
    }
    const PiecewiseLinear psi_sum = sum_of_squares(psi.psis);
    const PiecewiseLinear target = dilation_difference(spec);
    if (!(psi_sum == target))
        throw ValidationError("sum |psi_i|^2 = sigma(xi/a) - sigma(xi)",
                              "differs at xi = " + difference_point(psi_sum, target).str());
}

// ---- writing ------------------------------------------------------------------

namespace {

Json rational_json(const Rational& r) { return r.str(); }

Json set_json(const IntervalSet& s) {
    Json out = Json::array();
    for (const auto& p : s.pieces()) out.push_back(Json::array({p.lo.str(), p.hi.str()}));
    return out;
}

Json pwl_json(const PiecewiseLinear& f) {
    Json out = Json::array();
    for (const auto& p : f.pieces())
        out.push_back({{"piece", Json::array({p.lo.str(), p.hi.str()})},
                       {"slope", rational_json(p.slope)},
                       {"intercept", rational_json(p.intercept)}});
    return out;
}

Json profile_json(const SqrtProfile& p) { return {{"square", pwl_json(p.square())}, {"domain", set_json(p.domain())}}; }

}  // namespace

std::string family_to_json(const FamilyFile& family) {
    Json j;
    j["format"] = "framesmith-family";
    j["version"] = kFamilyFormatVersion;
    j["dilation"] = family.wavelets.dilation;
    j["sigma"] = pwl_json(family.wavelets.sigma);
    Json partition = Json::array();
    for (const auto& k : family.wavelets.partition) partition.push_back(set_json(k));
    j["partition"] = partition;
    Json psis = Json::array();
    for (const auto& p : family.wavelets.psis) psis.push_back(profile_json(p));
    j["psis"] = psis;
    Json phis = Json::array();
    for (const auto& [k, p] : family.scaling.phis) {
        Json e = profile_json(p);
        e["k"] = k;
        phis.push_back(e);
    }
    j["phis"] = phis;
    j["provenance"] = {{"input", family.provenance.input},
                       {"input_digest", family.provenance.input_digest},
                       {"tool_version", family.provenance.tool_version}};
    return j.dump(2) + "\n";
}

// ---- reading ------------------------------------------------------------------

namespace {

/// A JSON value together with its pointer, so every error names its place.
struct Node {
    const Json& value;
    std::string path;

    Node operator[](const char* key) const {
        if (!value.is_object()) throw ParseError("expected an object", where());
        const auto it = value.find(key);
        if (it == value.end()) throw ParseError(std::string("missing key '") + key + "'", path + "/" + key);
        return {*it, path + "/" + key};
    }
    Node operator[](std::size_t i) const { return {value.at(i), path + "/" + std::to_string(i)}; }
    std::size_t array_size() const {
        if (!value.is_array()) throw ParseError("expected an array", where());
        return value.size();
    }
    std::string where() const { return path.empty() ? "/" : path; }

    Rational rational() const {
        if (value.is_number_integer()) return Rational(value.get<long>(), 1);
        if (!value.is_string()) throw ParseError("rational must be a string \"p/q\" or an integer", where());
        try {
            return Rational::parse(value.get<std::string>());
        } catch (const ParseError&) {
            throw ParseError("malformed rational '" + value.get<std::string>() + "'", where());
        }
    }
    long integer() const {
        if (!value.is_number_integer()) throw ParseError("expected an integer", where());
        return value.get<long>();
    }
    std::string string() const {
        if (!value.is_string()) throw ParseError("expected a string", where());
        return value.get<std::string>();
    }
};

Interval interval_of(const Node& n) {
    if (n.array_size() != 2) throw ParseError("interval must be [l, r]", n.where());
    return {n[std::size_t{0}].rational(), n[std::size_t{1}].rational()};
}

IntervalSet set_of(const Node& n) {
    std::vector<Interval> pieces;
    for (std::size_t i = 0; i < n.array_size(); ++i) pieces.push_back(interval_of(n[i]));
    return IntervalSet(std::move(pieces));
}

PiecewiseLinear pwl_of(const Node& n) {
    std::vector<LinearPiece> pieces;
    for (std::size_t i = 0; i < n.array_size(); ++i) {
        const Node e = n[i];
        const Interval iv = interval_of(e["piece"]);
        pieces.push_back({iv.lo, iv.hi, e["slope"].rational(), e["intercept"].rational()});
    }
    return PiecewiseLinear(std::move(pieces));
}

SqrtProfile profile_of(const Node& n) { return SqrtProfile(pwl_of(n["square"]), set_of(n["domain"])); }

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what(), "byte " + std::to_string(e.byte));
    }
}

}  // namespace

FamilyFile family_from_json(std::string_view text, bool validate) {
    const Json j = parse_json(text);
    const Node root{j, ""};
    if (root["format"].string() != "framesmith-family") throw ParseError("not a framesmith family file", "/format");
    if (root["version"].integer() != kFamilyFormatVersion)
        throw ParseError("unsupported version " + std::to_string(root["version"].integer()), "/version");

    FamilyFile f;
    const long a = root["dilation"].integer();
    const PiecewiseLinear sigma = pwl_of(root["sigma"]);
    f.scaling.dilation = f.wavelets.dilation = a;
    f.scaling.sigma = f.wavelets.sigma = sigma;

    const Node partition = root["partition"];
    for (std::size_t i = 0; i < partition.array_size(); ++i) f.wavelets.partition.push_back(set_of(partition[i]));
    const Node psis = root["psis"];
    for (std::size_t i = 0; i < psis.array_size(); ++i) f.wavelets.psis.push_back(profile_of(psis[i]));
    const Node phis = root["phis"];
    for (std::size_t i = 0; i < phis.array_size(); ++i) {
        const long k = phis[i]["k"].integer();
        if (!f.scaling.phis.emplace(k, profile_of(phis[i])).second)
            throw ParseError("duplicate k = " + std::to_string(k), phis[i].where() + "/k");
    }
    const Node prov = root["provenance"];
    f.provenance = {prov["input"].string(), prov["input_digest"].string(), prov["tool_version"].string()};

    if (validate) validate_family(f);
    return f;
}

std::string report_to_json(const VerificationReport& report, const ReportHeader& header) {
    Json j;
    j["format"] = "framesmith-report";
    j["version"] = kReportFormatVersion;
    j["command"] = header.command;
    if (!header.family_digest.empty()) j["family_digest"] = header.family_digest;
    j["seed"] = header.seed;
    j["precision_bits"] = header.precision_bits;
    j["status"] = to_string(report.status());
    Json checks = Json::array();
    for (const auto& c : report.checks()) {
        Json e;
        e["name"] = c.name;
        e["status"] = to_string(c.status);
        if (c.tail_bound) e["tail_bound"] = c.tail_bound->str();
        if (c.witness) {
            Json w;
            w["xi"] = c.witness->xi.str();
            if (c.witness->s) w["s"] = *c.witness->s;
            if (c.witness->j) w["j"] = *c.witness->j;
            w["lhs"] = c.witness->lhs;
            w["rhs"] = c.witness->rhs;
            e["witness"] = w;
        }
        e["detail"] = c.detail;
        checks.push_back(e);
    }
    j["checks"] = checks;
    return j.dump(2) + "\n";
}

PiecewiseLinear parse_piecewise_linear_json(std::string_view text) {
    const Json j = parse_json(text);
    return pwl_of(Node{j, ""});
}

IntervalSet parse_interval_set(std::string_view text) {
    if (text == "shannon") return shannon_set();
    if (text == "journe") return journe_set();
    std::string s;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text.substr(i, 3) == "∪") {
            s += 'u';
            i += 2;
        } else if (!std::isspace(static_cast<unsigned char>(text[i]))) {
            s += text[i] == 'U' ? 'u' : text[i];
        }
    }
    if (s.empty()) throw ParseError("empty set", std::string(text));
    std::vector<Interval> pieces;
    std::size_t pos = 0;
    while (pos < s.size()) {
        if (s[pos] != '[') throw ParseError("expected '[' at offset " + std::to_string(pos), std::string(text));
        const auto close = s.find(')', pos);
        const auto comma = s.find(',', pos);
        if (close == std::string::npos || comma == std::string::npos || comma > close)
            throw ParseError("expected [l,r) at offset " + std::to_string(pos), std::string(text));
        Rational l, r;
        try {
            l = Rational::parse(std::string_view(s).substr(pos + 1, comma - pos - 1));
            r = Rational::parse(std::string_view(s).substr(comma + 1, close - comma - 1));
        } catch (const ParseError&) {
            throw ParseError("bad endpoint in interval at offset " + std::to_string(pos), std::string(text));
        }
        if (!(l < r)) throw ValidationError("intervals nonempty", "[" + l.str() + ", " + r.str() + ")");
        pieces.push_back({l, r});
        pos = close + 1;
        if (pos < s.size()) {
            if (s[pos] != 'u') throw ParseError("expected 'u' at offset " + std::to_string(pos), std::string(text));
            ++pos;
        }
    }
    return IntervalSet(std::move(pieces));
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace framesmith
