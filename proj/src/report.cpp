#include "pinv/report.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "pinv/lattice.hpp"

namespace pinv {

namespace {

// Fiber degree of the canonical class where the model carries a
// fibration: -2 for ruled (sections of the anticanonical twist), 0 for
// elliptic, inherited through blow-ups, absent otherwise.
std::optional<long> canonical_fiber_degree(const SurfaceModel& m) {
    if (std::get_if<RuledModel>(&m.v)) return -2;
    if (std::get_if<EllipticModel>(&m.v)) return 0;
    if (const auto* b = std::get_if<BlowUpModel>(&m.v)) {
        if (!b->base) throw input_error("blow-up model: missing base model");
        return canonical_fiber_degree(*b->base);
    }
    return std::nullopt;
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (const auto& row : m) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(int_to_json(x));
        rows.push_back(std::move(r));
    }
    return rows;
}

Json int_vector_to_json(const std::vector<Int>& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(int_to_json(x));
    return out;
}

Json cmd_invariants(const ComputationRequest& req) {
    const auto inv = invariants(req.surface);
    Json r{{"command", "invariants"},
           {"chi", inv.chi},
           {"irregularity", inv.q},
           {"p_g", inv.p_g}};
    if (auto d = canonical_fiber_degree(req.surface))
        r["canonical_fiber_degree"] = *d;
    return r;
}

Json cmd_compute(const ComputationRequest& req) {
    Json entries = Json::array();
    for (std::size_t i = 0; i < req.classes.size(); ++i)
        entries.push_back(
            Json{{"class", req.class_echoes[i]},
                 {"pair", pair_to_json(compute_pair(req.surface, req.classes[i]))}});
    return Json{{"command", "compute"}, {"entries", std::move(entries)}};
}

Json wallcheck_ruled(const RuledModel& rm, const RuledClass& rc, const Json& echo) {
    PoincarePair pair;
    bool boundary = false;
    if (rm.genus == 0) {
        pair = poincare_hirzebruch(rc);
    } else {
        auto rp = poincare_ruled(rm.genus, rc);
        pair = std::move(rp.value);
        boundary = rp.boundary_disagreement;
    }
    const ExtElement direct = pair.p_plus - pair.p_minus;
    const Int c_half = rc.fiber_pairing + 1;
    const ExtElement fibered =
        wall_crossing_fibered(static_cast<int>(rm.genus), rc.nu, c_half);
    return Json{{"class", echo},
                {"difference", ext_to_json(direct)},
                {"wall_formula", ext_to_json(fibered)},
                {"c_half", int_to_json(c_half)},
                {"boundary_disagreement", boundary},
                {"agreement", direct == fibered}};
}

Json wallcheck_log_transform(const ComputationRequest& req, const EllipticModel& em,
                             const FiberClass& fc, const Json& echo) {
    const auto pair = poincare_elliptic(em, fc);
    const ExtElement direct = pair.p_plus - pair.p_minus;

    const auto k = std::get<FiberClass>(canonical_class(req.surface).v);
    std::vector<Int> t(fc.coeffs.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = 2 * fc.coeffs[i] - k.coeffs[i];
    const Rat pairing = albanese_fiber_pairing(req.surface, FiberClass{t});

    std::vector<Int> unit(fc.coeffs.size(), Int(0));
    unit[0] = 1;
    const Rat e_dot_f = albanese_fiber_pairing(req.surface, FiberClass{unit});

    // <2m-k, E> is an even integer for every fiber-type class (it is
    // 2 deg(m|_E) - deg(k|_E) and the fiber degree of k is 0 here);
    // a failure means the lattice data is inconsistent.
    if (pairing.get_den() != 1 || pairing.get_num() % 2 != 0)
        throw engine_error("wallcheck: pairing <2m-k, E> = " + pairing.get_str() +
                           " is not an even integer");
    const Int c_half = pairing.get_num() / 2;
    const ExtElement fibered = wall_crossing_fibered(1, Int(0), c_half);

    return Json{{"class", echo},
                {"difference", ext_to_json(direct)},
                {"wall_formula", ext_to_json(fibered)},
                {"c_half", int_to_json(c_half)},
                {"e_dot_f", rat_to_json(e_dot_f)},
                {"pairing_2m_minus_k", rat_to_json(pairing)},
                {"agreement", direct == fibered}};
}

Json cmd_wallcheck(const ComputationRequest& req) {
    Json entries = Json::array();
    for (std::size_t i = 0; i < req.classes.size(); ++i) {
        if (const auto* rm = std::get_if<RuledModel>(&req.surface.v)) {
            entries.push_back(wallcheck_ruled(*rm,
                                              std::get<RuledClass>(req.classes[i].v),
                                              req.class_echoes[i]));
            continue;
        }
        const auto* em = std::get_if<EllipticModel>(&req.surface.v);
        if (em && em->from_log_transform) {
            entries.push_back(wallcheck_log_transform(
                req, *em, std::get<FiberClass>(req.classes[i].v),
                req.class_echoes[i]));
            continue;
        }
        throw input_error(
            "wallcheck supports ruled models and log-transform elliptic models");
    }
    return Json{{"command", "wallcheck"}, {"entries", std::move(entries)}};
}

Json cmd_components(const ComputationRequest& req) {
    const auto* em = std::get_if<EllipticModel>(&req.surface.v);
    if (!em) throw input_error("components requires an elliptic model");
    Json entries = Json::array();
    for (std::size_t i = 0; i < req.classes.size(); ++i) {
        const auto comps =
            hilbert_components(*em, std::get<FiberClass>(req.classes[i].v));
        Json list = Json::array();
        std::size_t nonempty = 0;
        for (const auto& c : comps) {
            if (!c.empty) ++nonempty;
            list.push_back(Json{{"twist", int_vector_to_json(c.twist)},
                                {"d", int_to_json(c.d)},
                                {"a", int_vector_to_json(c.a)},
                                {"dimension", c.dimension},
                                {"empty", c.empty}});
        }
        entries.push_back(Json{{"class", req.class_echoes[i]},
                               {"total", comps.size()},
                               {"nonempty", nonempty},
                               {"components", std::move(list)}});
    }
    return Json{{"command", "components"}, {"entries", std::move(entries)}};
}

Json cmd_basic_classes(const ComputationRequest& req) {
    const auto rep = basic_classes(req.surface);
    Json classes = Json::array();
    for (const auto& e : rep.classes)
        classes.push_back(Json{{"label", e.label},
                               {"coords", int_vector_to_json(e.coords)},
                               {"pair", pair_to_json(e.pair)}});
    return Json{{"command", "basic-classes"},
                {"simple_type", rep.simple_type},
                {"classes", std::move(classes)}};
}

Json cmd_blowup(const ComputationRequest& req) {
    const auto* bm = std::get_if<BlowUpModel>(&req.surface.v);
    if (!bm) throw input_error("blowup requires a blow_up surface");
    if (!bm->base) throw input_error("blow-up model: missing base model");
    Json entries = Json::array();
    for (std::size_t i = 0; i < req.classes.size(); ++i) {
        const auto& bc = std::get<BlowUpClass>(req.classes[i].v);
        if (!bc.base) throw input_error("blow-up class: missing base class");
        auto pair = compute_pair(*bm->base, *bc.base);
        const Json base_pair = pair_to_json(pair);
        Int mmk = class_m_m_minus_k(*bc.base);
        Json steps = Json::array();
        for (const auto& l : bc.l) {
            pair = blowup_transform(pair, mmk, l);
            mmk -= l * (l - 1);
            steps.push_back(Json{{"l", int_to_json(l)},
                                 {"truncation_bound", int_to_json(mmk)},
                                 {"pair", pair_to_json(pair)}});
        }
        entries.push_back(Json{{"class", req.class_echoes[i]},
                               {"base_pair", base_pair},
                               {"steps", std::move(steps)},
                               {"final", pair_to_json(pair)}});
    }
    return Json{{"command", "blowup"}, {"entries", std::move(entries)}};
}

Json cmd_snf(const ComputationRequest& req) {
    if (!req.matrix)
        throw input_error("/matrix: the snf command needs a matrix in the document");
    const auto s = smith_normal_form(*req.matrix);
    const std::size_t rows = req.matrix->size();
    const std::size_t cols = req.matrix->front().size();
    Json diagonal = Json::array();
    for (std::size_t i = 0; i < rows && i < cols; ++i)
        diagonal.push_back(int_to_json(s.d[i][i]));
    return Json{{"command", "snf"},
                {"u", matrix_to_json(s.u)},
                {"d", matrix_to_json(s.d)},
                {"v", matrix_to_json(s.v)},
                {"diagonal", std::move(diagonal)}};
}

Json run_command(const ComputationRequest& req, const std::string& cmd) {
    if (cmd == "invariants") return cmd_invariants(req);
    if (cmd == "compute") return cmd_compute(req);
    if (cmd == "wallcheck") return cmd_wallcheck(req);
    if (cmd == "components") return cmd_components(req);
    if (cmd == "basic-classes") return cmd_basic_classes(req);
    if (cmd == "blowup") return cmd_blowup(req);
    if (cmd == "snf") return cmd_snf(req);
    throw input_error("unknown command \"" + cmd + "\"");
}

// ---- table rendering ----------------------------------------------------

std::string int_str(const Json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
}

std::vector<int> mono_indices(const std::string& key) {
    std::vector<int> idx;
    std::size_t pos = 0;
    while (pos < key.size()) {
        std::size_t dot = key.find('.', pos);
        if (dot == std::string::npos) dot = key.size();
        idx.push_back(std::stoi(key.substr(pos, dot - pos)));
        pos = dot + 1;
    }
    return idx;
}

// "4 + 2*[1.3] - [1.2.3.4]" from the serialized exterior element,
// terms ordered by degree, then by generator indices.
std::string ext_str(const Json& e) {
    const Json& terms = e.at("terms");
    if (terms.empty()) return "0";
    std::vector<std::pair<std::vector<int>, std::string>> ordered;
    for (const auto& item : terms.items())
        ordered.emplace_back(mono_indices(item.key()), item.key());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
        return a.first < b.first;
    });
    std::string out;
    for (const auto& [idx, key] : ordered) {
        std::string c = int_str(terms.at(key));
        const bool neg = !c.empty() && c[0] == '-';
        if (neg) c.erase(0, 1);
        std::string term =
            key.empty() ? c : (c == "1" ? "" : c + "*") + "[" + key + "]";
        if (out.empty())
            out = (neg ? "-" : "") + term;
        else
            out += (neg ? " - " : " + ") + term;
    }
    return out;
}

void pair_lines(std::ostream& os, const Json& p, const std::string& indent) {
    os << indent << "P+ = " << ext_str(p.at("p_plus")) << "\n";
    os << indent << "P- = " << ext_str(p.at("p_minus")) << "\n";
    os << indent << "degrees = (" << int_str(p.at("numeric_degrees")[0]) << ", "
       << int_str(p.at("numeric_degrees")[1]) << ")\n";
    os << indent << "via " << p.at("provenance").get<std::string>() << "\n";
}

void kv(std::ostream& os, const std::string& label, const std::string& value) {
    std::string pad(label.size() < 24 ? 24 - label.size() : 1, ' ');
    os << "  " << label << pad << value << "\n";
}

void table_invariants(std::ostream& os, const Json& r) {
    kv(os, "chi", r.at("chi").dump());
    kv(os, "irregularity", r.at("irregularity").dump());
    kv(os, "p_g", r.at("p_g").dump());
    if (r.contains("canonical_fiber_degree"))
        kv(os, "canonical fiber degree", r.at("canonical_fiber_degree").dump());
}

void table_compute(std::ostream& os, const Json& r) {
    for (const auto& e : r.at("entries")) {
        os << "  class " << e.at("class").dump() << "\n";
        pair_lines(os, e.at("pair"), "    ");
    }
}

void table_wallcheck(std::ostream& os, const Json& r) {
    for (const auto& e : r.at("entries")) {
        os << "  class " << e.at("class").dump() << "\n";
        os << "    P+ - P-      = " << ext_str(e.at("difference")) << "\n";
        os << "    wall formula = " << ext_str(e.at("wall_formula")) << "\n";
        os << "    c_half       = " << int_str(e.at("c_half")) << "\n";
        if (e.contains("e_dot_f")) {
            const Json& f = e.at("e_dot_f");
            os << "    <E, F>       = " << int_str(f[0]);
            if (int_str(f[1]) != "1") os << "/" << int_str(f[1]);
            os << "\n";
        }
        if (e.contains("pairing_2m_minus_k")) {
            const Json& f = e.at("pairing_2m_minus_k");
            os << "    <2m-k, E>    = " << int_str(f[0]);
            if (int_str(f[1]) != "1") os << "/" << int_str(f[1]);
            os << "\n";
        }
        os << "    agreement    = "
           << (e.at("agreement").get<bool>() ? "yes" : "NO") << "\n";
    }
}

std::string int_list_str(const Json& arr) {
    std::string out = "[";
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (i) out += ",";
        out += int_str(arr[i]);
    }
    return out + "]";
}

void table_components(std::ostream& os, const Json& r) {
    for (const auto& e : r.at("entries")) {
        os << "  class " << e.at("class").dump() << "  (" << e.at("total").dump()
           << " components, " << e.at("nonempty").dump() << " nonempty)\n";
        for (const auto& c : e.at("components")) {
            os << "    twist=" << int_list_str(c.at("twist"));
            if (c.at("empty").get<bool>())
                os << " empty\n";
            else
                os << " d=" << int_str(c.at("d")) << " a=" << int_list_str(c.at("a"))
                   << " dim=" << c.at("dimension").dump() << "\n";
        }
    }
}

void table_basic_classes(std::ostream& os, const Json& r) {
    kv(os, "simple type", r.at("simple_type").get<bool>() ? "yes" : "no");
    for (const auto& e : r.at("classes")) {
        os << "  " << e.at("label").get<std::string>();
        if (!e.at("coords").empty()) os << "  coords=" << int_list_str(e.at("coords"));
        os << "\n";
        pair_lines(os, e.at("pair"), "    ");
    }
}

void table_blowup(std::ostream& os, const Json& r) {
    for (const auto& e : r.at("entries")) {
        os << "  class " << e.at("class").dump() << "\n";
        os << "    base:\n";
        pair_lines(os, e.at("base_pair"), "      ");
        for (const auto& s : e.at("steps")) {
            os << "    step l=" << int_str(s.at("l"))
               << " truncation bound=" << int_str(s.at("truncation_bound")) << ":\n";
            pair_lines(os, s.at("pair"), "      ");
        }
        os << "    final:\n";
        pair_lines(os, e.at("final"), "      ");
    }
}

void table_matrix(std::ostream& os, const std::string& name, const Json& m) {
    os << "  " << name << ":\n";
    for (const auto& row : m) os << "    " << int_list_str(row) << "\n";
}

void table_snf(std::ostream& os, const Json& r) {
    std::string diag;
    for (std::size_t i = 0; i < r.at("diagonal").size(); ++i) {
        if (i) diag += ", ";
        diag += int_str(r.at("diagonal")[i]);
    }
    kv(os, "diagonal", diag);
    table_matrix(os, "u", r.at("u"));
    table_matrix(os, "d", r.at("d"));
    table_matrix(os, "v", r.at("v"));
}

} // namespace

Json run(const ComputationRequest& req) {
    Json out;
    out["surface"] = req.surface_echo;
    Json results = Json::array();
    for (const auto& cmd : req.commands) results.push_back(run_command(req, cmd));
    out["results"] = std::move(results);
    return out;
}

std::string render_json(const Json& report) { return report.dump(2) + "\n"; }

std::string render_table(const Json& report) {
    std::ostringstream os;
    os << "surface: " << report.at("surface").dump() << "\n";
    for (const auto& r : report.at("results")) {
        const std::string cmd = r.at("command").get<std::string>();
        os << "\n[" << cmd << "]\n";
        if (cmd == "invariants") table_invariants(os, r);
        else if (cmd == "compute") table_compute(os, r);
        else if (cmd == "wallcheck") table_wallcheck(os, r);
        else if (cmd == "components") table_components(os, r);
        else if (cmd == "basic-classes") table_basic_classes(os, r);
        else if (cmd == "blowup") table_blowup(os, r);
        else if (cmd == "snf") table_snf(os, r);
    }
    return os.str();
}

} // namespace pinv
