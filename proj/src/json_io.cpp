#include "pinv/json_io.hpp"

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace pinv {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw input_error(path + ": " + msg);
}

const Json& need(const Json& j, const char* key, const std::string& path) {
    auto it = j.find(key);
    if (it == j.end()) fail(path, std::string("missing required key \"") + key + "\"");
    return *it;
}

void need_object(const Json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
}

void need_array(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
}

// Strict schema: every key must be in the allowed list.
void check_keys(const Json& j, std::initializer_list<const char*> allowed,
                const std::string& path) {
    for (const auto& item : j.items()) {
        const std::string& k = item.key();
        bool ok = std::any_of(allowed.begin(), allowed.end(),
                              [&](const char* a) { return k == a; });
        if (!ok) fail(path + "/" + k, "unknown key");
    }
}

std::string need_string(const Json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

bool need_bool(const Json& j, const std::string& path) {
    if (!j.is_boolean()) fail(path, "expected a boolean");
    return j.get<bool>();
}

// Exact integer: JSON integer or decimal string.  Floats are refused so
// no value can round silently.
Int parse_int(const Json& j, const std::string& path) {
    if (j.is_number_float())
        fail(path, "expected an exact integer, got a float");
    if (j.is_number_unsigned()) {
        auto u = j.get<std::uint64_t>();
        if (u <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
            return Int(static_cast<long>(u));
        return Int(j.dump());
    }
    if (j.is_number_integer()) return Int(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        std::size_t digits_from = (!s.empty() && s[0] == '-') ? 1 : 0;
        bool ok = s.size() > digits_from &&
                  std::all_of(s.begin() + static_cast<long>(digits_from), s.end(),
                              [](char c) { return c >= '0' && c <= '9'; });
        if (!ok) fail(path, "not a decimal integer string: \"" + s + "\"");
        return Int(s);
    }
    fail(path, "expected an exact integer (number or decimal string)");
}

long parse_small(const Json& j, const std::string& path) {
    Int x = parse_int(j, path);
    if (!x.fits_slong_p()) fail(path, "value out of range");
    return x.get_si();
}

std::vector<Int> parse_int_array(const Json& j, const std::string& path) {
    need_array(j, path);
    std::vector<Int> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(parse_int(j[i], path + "/" + std::to_string(i)));
    return out;
}

SurfaceModel parse_surface(const Json& j, const std::string& path);

SurfaceModel parse_ruled(const Json& j, const std::string& path) {
    check_keys(j, {"type", "genus"}, path);
    long g = parse_small(need(j, "genus", path), path + "/genus");
    if (g < 0) fail(path + "/genus", "genus must be nonnegative");
    return SurfaceModel{RuledModel{g}};
}

SurfaceModel parse_elliptic(const Json& j, const std::string& path) {
    check_keys(j, {"type", "base_genus", "chi", "irregularity", "multiplicities"}, path);
    EllipticModel m;
    m.base_genus = parse_small(need(j, "base_genus", path), path + "/base_genus");
    m.chi = parse_small(need(j, "chi", path), path + "/chi");
    m.irregularity =
        parse_small(need(j, "irregularity", path), path + "/irregularity");
    m.multiplicities =
        parse_int_array(need(j, "multiplicities", path), path + "/multiplicities");
    for (std::size_t i = 0; i < m.multiplicities.size(); ++i)
        if (m.multiplicities[i] < 2)
            fail(path + "/multiplicities/" + std::to_string(i),
                 "multiplicity must be at least 2");
    const auto r = m.multiplicities.size();
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<Int> row(1 + r, Int(0));
        row[0] = -1;
        row[1 + i] = m.multiplicities[i];
        m.presentation.rows.push_back(std::move(row));
    }
    m.presentation.generators = static_cast<int>(1 + r);
    SurfaceModel out{std::move(m)};
    try {
        invariants(out); // rejects non-geometric invariant combinations
    } catch (const input_error& e) {
        fail(path, e.what());
    }
    return out;
}

SurfaceModel parse_log_transform(const Json& j, const std::string& path) {
    check_keys(j, {"type", "fibers"}, path);
    const Json& jf = need(j, "fibers", path);
    need_array(jf, path + "/fibers");
    std::vector<LogFiber> fibers;
    fibers.reserve(jf.size());
    for (std::size_t i = 0; i < jf.size(); ++i) {
        const std::string fp = path + "/fibers/" + std::to_string(i);
        need_array(jf[i], fp);
        if (jf[i].size() != 3) fail(fp, "expected [multiplicity, u, v]");
        fibers.push_back(LogFiber{parse_int(jf[i][0], fp + "/0"),
                                  parse_int(jf[i][1], fp + "/1"),
                                  parse_int(jf[i][2], fp + "/2")});
    }
    try {
        return build_log_transform(fibers);
    } catch (const input_error& e) {
        fail(path + "/fibers", e.what());
    }
}

SurfaceModel parse_blow_up(const Json& j, const std::string& path) {
    check_keys(j, {"type", "base", "exceptional_count"}, path);
    auto base = std::make_shared<SurfaceModel>(
        parse_surface(need(j, "base", path), path + "/base"));
    long count = parse_small(need(j, "exceptional_count", path),
                             path + "/exceptional_count");
    if (count < 1)
        fail(path + "/exceptional_count", "at least one exceptional curve required");
    return SurfaceModel{BlowUpModel{std::move(base), static_cast<int>(count)}};
}

SurfaceModel parse_minimal_pg_positive(const Json& j, const std::string& path) {
    const std::string kind = need_string(need(j, "kind", path), path + "/kind");
    if (kind == "k3") {
        check_keys(j, {"type", "kind"}, path);
        return SurfaceModel{MinimalPgPositiveModel{MinimalKind::K3, 2, 0}};
    }
    if (kind == "abelian") {
        check_keys(j, {"type", "kind"}, path);
        return SurfaceModel{MinimalPgPositiveModel{MinimalKind::Abelian, 0, 2}};
    }
    if (kind == "general_type") {
        check_keys(j, {"type", "kind", "chi", "irregularity"}, path);
        long chi = parse_small(need(j, "chi", path), path + "/chi");
        long q = j.contains("irregularity")
                     ? parse_small(j["irregularity"], path + "/irregularity")
                     : 0;
        SurfaceModel out{MinimalPgPositiveModel{MinimalKind::GeneralType, chi, q}};
        try {
            invariants(out);
        } catch (const input_error& e) {
            fail(path, e.what());
        }
        return out;
    }
    fail(path + "/kind",
         "unknown kind \"" + kind + "\" (expected k3, abelian, general_type)");
}

SurfaceModel parse_minimal_pg_zero(const Json& j, const std::string& path) {
    check_keys(j, {"type", "kind"}, path);
    const std::string kind = need_string(need(j, "kind", path), path + "/kind");
    if (kind == "enriques")
        return SurfaceModel{MinimalPgZeroModel{SpecialKind::Enriques}};
    if (kind == "bielliptic")
        return SurfaceModel{MinimalPgZeroModel{SpecialKind::Bielliptic}};
    fail(path + "/kind",
         "unknown kind \"" + kind + "\" (expected enriques, bielliptic)");
}

SurfaceModel parse_surface(const Json& j, const std::string& path) {
    need_object(j, path);
    const std::string type = need_string(need(j, "type", path), path + "/type");
    if (type == "ruled") return parse_ruled(j, path);
    if (type == "elliptic") return parse_elliptic(j, path);
    if (type == "log_transform_elliptic") return parse_log_transform(j, path);
    if (type == "blow_up") return parse_blow_up(j, path);
    if (type == "minimal_pg_positive") return parse_minimal_pg_positive(j, path);
    if (type == "minimal_pg_zero_special") return parse_minimal_pg_zero(j, path);
    fail(path + "/type",
         "unknown surface type \"" + type +
             "\" (expected ruled, elliptic, log_transform_elliptic, blow_up, "
             "minimal_pg_positive, minimal_pg_zero_special)");
}

DivisorClass parse_symbolic_class(const Json& j, const std::string& path) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "zero") return DivisorClass{SymbolicClass{SymbolicTag::Zero, {}, {}}};
        if (s == "canonical")
            return DivisorClass{SymbolicClass{SymbolicTag::Canonical, {}, {}}};
        fail(path, "unknown class \"" + s + "\" (expected zero, canonical, or an "
                   "object with tag \"other\")");
    }
    need_object(j, path);
    check_keys(j, {"tag", "hilb_nonempty", "nu"}, path);
    const std::string tag = need_string(need(j, "tag", path), path + "/tag");
    if (tag != "other")
        fail(path + "/tag", "expected \"other\" (zero and canonical are plain strings)");
    SymbolicClass s{SymbolicTag::Other, {}, {}};
    if (j.contains("hilb_nonempty"))
        s.hilb_nonempty = need_bool(j["hilb_nonempty"], path + "/hilb_nonempty");
    if (j.contains("nu")) s.nu = parse_int(j["nu"], path + "/nu");
    return DivisorClass{std::move(s)};
}

std::vector<std::string> parse_commands(const Json& j, const std::string& path) {
    need_array(j, path);
    static const std::initializer_list<const char*> known = {
        "invariants", "compute", "wallcheck", "components",
        "basic-classes", "blowup", "snf"};
    std::vector<std::string> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = path + "/" + std::to_string(i);
        const std::string c = need_string(j[i], p);
        bool ok = std::any_of(known.begin(), known.end(),
                              [&](const char* k) { return c == k; });
        if (!ok)
            fail(p, "unknown command \"" + c +
                        "\" (expected invariants, compute, wallcheck, components, "
                        "basic-classes, blowup, snf)");
        out.push_back(c);
    }
    return out;
}

Matrix parse_matrix(const Json& j, const std::string& path) {
    need_array(j, path);
    if (j.empty()) fail(path, "matrix must have at least one row");
    Matrix m;
    m.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = path + "/" + std::to_string(i);
        m.push_back(parse_int_array(j[i], p));
        if (m.back().size() != m.front().size())
            fail(p, "rows must all have the same length");
    }
    if (m.front().empty()) fail(path + "/0", "rows must not be empty");
    return m;
}

} // namespace

Json int_to_json(const Int& x) {
    if (x.fits_slong_p()) return Json(static_cast<std::int64_t>(x.get_si()));
    return Json(x.get_str());
}

Json rat_to_json(const Rat& x) {
    Rat c = x; // (num, den) constructions are not canonical until asked
    c.canonicalize();
    return Json::array({int_to_json(c.get_num()), int_to_json(c.get_den())});
}

Json ext_to_json(const ExtElement& x) {
    Json terms = Json::object();
    for (const auto& [mono, coeff] : x.terms())
        terms[ExtElement::mono_key(mono)] = int_to_json(coeff);
    return Json{{"rank", x.rank()}, {"terms", std::move(terms)}};
}

Json pair_to_json(const PoincarePair& p) {
    return Json{{"p_plus", ext_to_json(p.p_plus)},
                {"p_minus", ext_to_json(p.p_minus)},
                {"provenance", p.provenance},
                {"numeric_degrees", Json::array({int_to_json(numeric_degree(p.p_plus)),
                                                 int_to_json(numeric_degree(p.p_minus))})}};
}

DivisorClass parse_class(const Json& j, const SurfaceModel& surface,
                         const std::string& path) {
    if (std::get_if<RuledModel>(&surface.v)) {
        need_object(j, path);
        check_keys(j, {"fiber_pairing", "nu"}, path);
        return DivisorClass{RuledClass{
            parse_int(need(j, "fiber_pairing", path), path + "/fiber_pairing"),
            parse_int(need(j, "nu", path), path + "/nu")}};
    }
    if (const auto* em = std::get_if<EllipticModel>(&surface.v)) {
        auto coeffs = parse_int_array(j, path);
        const std::size_t want = 1 + em->multiplicities.size();
        if (coeffs.size() != want)
            fail(path, "expected " + std::to_string(want) +
                           " coordinates ([F], then the multiple fibers)");
        return DivisorClass{FiberClass{std::move(coeffs)}};
    }
    if (const auto* bm = std::get_if<BlowUpModel>(&surface.v)) {
        need_object(j, path);
        check_keys(j, {"base_class", "l"}, path);
        auto base = std::make_shared<DivisorClass>(parse_class(
            need(j, "base_class", path), *bm->base, path + "/base_class"));
        auto l = parse_int_array(need(j, "l", path), path + "/l");
        if (l.size() != static_cast<std::size_t>(bm->exceptional_count))
            fail(path + "/l", "expected one multiple per exceptional curve (" +
                                  std::to_string(bm->exceptional_count) + ")");
        return DivisorClass{BlowUpClass{std::move(base), std::move(l)}};
    }
    return parse_symbolic_class(j, path);
}

ComputationRequest parse_request(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw input_error(std::string("/: not valid JSON: ") + e.what());
    }
    need_object(doc, "/");
    check_keys(doc, {"surface", "classes", "commands", "matrix"}, "");

    ComputationRequest req;
    req.surface = parse_surface(need(doc, "surface", "/"), "/surface");
    req.surface_echo = doc["surface"];

    if (doc.contains("classes")) {
        const Json& jc = doc["classes"];
        need_array(jc, "/classes");
        for (std::size_t i = 0; i < jc.size(); ++i) {
            req.classes.push_back(
                parse_class(jc[i], req.surface, "/classes/" + std::to_string(i)));
            req.class_echoes.push_back(jc[i]);
        }
    }
    if (doc.contains("commands"))
        req.commands = parse_commands(doc["commands"], "/commands");
    if (doc.contains("matrix"))
        req.matrix = parse_matrix(doc["matrix"], "/matrix");
    return req;
}

} // namespace pinv
