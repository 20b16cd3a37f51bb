#include "isomono/config_io.hpp"

#include <fstream>

namespace isomono {

using nlohmann::json;

namespace {

std::string child(const std::string& ptr, const std::string& key) { return ptr + "/" + key; }
std::string child(const std::string& ptr, size_t index) { return ptr + "/" + std::to_string(index); }

const json& field(const json& obj, const std::string& ptr, const std::string& key) {
    if (!obj.is_object()) throw SchemaError(ptr, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(child(ptr, key), "missing field");
    return *it;
}

cplx read_complex(const json& v, const std::string& ptr) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
    throw SchemaError(ptr, "expected a complex number [re, im]");
}

cvec read_complex_list(const json& v, const std::string& ptr) {
    if (!v.is_array()) throw SchemaError(ptr, "expected an array of complex numbers");
    cvec out;
    for (size_t i = 0; i < v.size(); ++i) out.push_back(read_complex(v[i], child(ptr, i)));
    return out;
}

int read_int(const json& v, const std::string& ptr) {
    if (!v.is_number_integer()) throw SchemaError(ptr, "expected an integer");
    return v.get<int>();
}

SheetPair read_sheets(const json& v, const std::string& ptr, size_t length) {
    if (!v.is_array()) throw SchemaError(ptr, "expected [sheet1, sheet2]");
    if (v.size() < 2) throw SchemaError(child(ptr, v.size()), "missing sheet " + std::to_string(v.size() + 1) + " times");
    if (v.size() > 2) throw SchemaError(ptr, "expected exactly two sheets");
    SheetPair out;
    for (size_t i = 0; i < 2; ++i) {
        out[i] = read_complex_list(v[i], child(ptr, i));
        if (out[i].size() != length)
            throw SchemaError(child(ptr, i), "expected " + std::to_string(length) + " entries, got " +
                                                 std::to_string(out[i].size()));
    }
    return out;
}

json sheets_to_json(const SheetPair& s) { return json::array({complex_list_to_json(s[0]), complex_list_to_json(s[1])}); }

}  // namespace

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json complex_list_to_json(const cvec& v) {
    json out = json::array();
    for (cplx z : v) out.push_back(complex_to_json(z));
    return out;
}

ParsedInput parse_config_json(const json& doc) {
    const std::string root;
    const json& version = field(doc, root, "schema");
    if (read_int(version, "/schema") != kConfigSchemaVersion)
        throw SchemaError("/schema", "unsupported schema version " + version.dump());

    ParsedInput in;
    ConnectionConfig& c = in.config;
    const json& st = field(doc, root, "structure");
    c.structure.r_inf = read_int(field(st, "/structure", "r_inf"), "/structure/r_inf");
    if (c.structure.r_inf < 1) throw SchemaError("/structure/r_inf", "must be at least 1");
    if (st.contains("poles")) {
        const json& poles = st["poles"];
        if (!poles.is_array()) throw SchemaError("/structure/poles", "expected an array");
        for (size_t s = 0; s < poles.size(); ++s) {
            const std::string ptr = child("/structure/poles", s);
            c.structure.X.push_back(read_complex(field(poles[s], ptr, "x"), child(ptr, "x")));
            const int r = read_int(field(poles[s], ptr, "r"), child(ptr, "r"));
            if (r < 1) throw SchemaError(child(ptr, "r"), "must be at least 1");
            c.structure.r.push_back(r);
        }
    }

    const json& times = field(doc, root, "times");
    c.t_inf = read_sheets(field(times, "/times", "inf"), "/times/inf", static_cast<size_t>(c.r_inf()));
    const int n = c.n();
    if (n > 0) {
        const json& tx = field(times, "/times", "X");
        if (!tx.is_array() || tx.size() != static_cast<size_t>(n))
            throw SchemaError("/times/X", "expected one sheet pair per pole (" + std::to_string(n) + ")");
        for (int s = 0; s < n; ++s)
            c.t_X.push_back(read_sheets(tx[static_cast<size_t>(s)], child("/times/X", static_cast<size_t>(s)),
                                        static_cast<size_t>(c.structure.r[static_cast<size_t>(s)])));
    }
    if (doc.contains("hbar")) c.hbar = read_complex(doc["hbar"], "/hbar");
    if (doc.contains("enforce_residue_sum")) {
        if (!doc["enforce_residue_sum"].is_boolean()) throw SchemaError("/enforce_residue_sum", "expected a boolean");
        c.enforce_residue_sum = doc["enforce_residue_sum"].get<bool>();
    }

    if (doc.contains("state")) {
        const json& s = doc["state"];
        DarbouxState state;
        state.q = read_complex_list(field(s, "/state", "q"), "/state/q");
        state.p = read_complex_list(field(s, "/state", "p"), "/state/p");
        if (state.q.size() != state.p.size()) throw SchemaError("/state/p", "expected as many entries as /state/q");
        in.state = state;
    }

    if (doc.contains("deformation")) {
        const json& d = doc["deformation"];
        DeformationVector a = DeformationVector::zero(c);
        if (d.contains("inf")) a.a_inf = read_sheets(d["inf"], "/deformation/inf", static_cast<size_t>(c.r_inf()));
        if (d.contains("X")) {
            const json& dx = d["X"];
            if (!dx.is_array() || dx.size() != static_cast<size_t>(n))
                throw SchemaError("/deformation/X", "expected one sheet pair per pole (" + std::to_string(n) + ")");
            for (int s = 0; s < n; ++s)
                a.a_X[static_cast<size_t>(s)] =
                    read_sheets(dx[static_cast<size_t>(s)], child("/deformation/X", static_cast<size_t>(s)),
                                static_cast<size_t>(c.structure.r[static_cast<size_t>(s)]));
        }
        if (d.contains("pos")) {
            a.a_pos = read_complex_list(d["pos"], "/deformation/pos");
            if (a.a_pos.size() != static_cast<size_t>(n))
                throw SchemaError("/deformation/pos", "expected one entry per pole (" + std::to_string(n) + ")");
        }
        in.deformation = a;
    }
    return in;
}

ParsedInput parse_config(const std::string& path, const Tolerances& tol) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(f);
    } catch (const json::parse_error& e) {
        throw SchemaError("", std::string("invalid JSON: ") + e.what());
    }
    ParsedInput in = parse_config_json(doc);
    std::vector<std::string> failures = validate(in.config, tol).failures;
    if (in.state) {
        const ValidationReport rep = validate_state(in.config, *in.state, tol);
        failures.insert(failures.end(), rep.failures.begin(), rep.failures.end());
    }
    if (!failures.empty()) {
        std::string msg;
        for (const auto& m : failures) msg += (msg.empty() ? "" : "; ") + m;
        throw ValidationError(msg);
    }
    return in;
}

json config_to_json(const ConnectionConfig& config, const DarbouxState* state, const DeformationVector* deformation) {
    json poles = json::array();
    for (int s = 0; s < config.n(); ++s)
        poles.push_back({{"x", complex_to_json(config.structure.X[static_cast<size_t>(s)])},
                         {"r", config.structure.r[static_cast<size_t>(s)]}});
    json tx = json::array();
    for (const auto& pair : config.t_X) tx.push_back(sheets_to_json(pair));
    json doc = {{"schema", kConfigSchemaVersion},
                {"structure", {{"r_inf", config.r_inf()}, {"poles", poles}}},
                {"times", {{"inf", sheets_to_json(config.t_inf)}, {"X", tx}}},
                {"hbar", complex_to_json(config.hbar)}};
    if (!config.enforce_residue_sum) doc["enforce_residue_sum"] = false;
    if (state) doc["state"] = {{"q", complex_list_to_json(state->q)}, {"p", complex_list_to_json(state->p)}};
    if (deformation) {
        json dx = json::array();
        for (const auto& pair : deformation->a_X) dx.push_back(sheets_to_json(pair));
        doc["deformation"] = {{"inf", sheets_to_json(deformation->a_inf)},
                              {"X", dx},
                              {"pos", complex_list_to_json(deformation->a_pos)}};
    }
    return doc;
}

json rational_to_json(const RationalFunction& f) {
    json parts = json::array();
    for (const auto& part : f.parts)
        parts.push_back({{"point", complex_to_json(part.point)}, {"coeffs", complex_list_to_json(part.coeffs)}});
    return {{"poly", complex_list_to_json(f.poly)}, {"parts", parts}};
}

}  // namespace isomono
