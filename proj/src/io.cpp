#include "tensorclt/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tensorclt::io {

namespace {

void reject_unknown_keys(const Json& j, std::initializer_list<const char*> allowed,
                         const std::string& what) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) { known = true; break; }
        require(known, errc::parse, what + ": unknown key \"" + it.key() + "\"");
    }
}

int get_int(const Json& j, const char* key, const std::string& what) {
    require(j.contains(key), errc::parse, what + ": missing \"" + key + "\"");
    require(j[key].is_number_integer(), errc::parse, what + ": \"" + key + "\" must be an integer");
    return j[key].get<int>();
}

void flatten_nested(const Json& node, int depth, int n, std::vector<double>& out,
                    const std::string& what) {
    if (depth == 0) {
        require(node.is_number(), errc::parse, what + ": values must be numbers");
        out.push_back(node.get<double>());
        return;
    }
    require(node.is_array() && static_cast<int>(node.size()) == n, errc::parse,
            what + ": nested array must have n entries per level");
    for (const auto& child : node) flatten_nested(child, depth - 1, n, out, what);
}

Json nest_values(const std::vector<double>& values, int depth, int n, std::size_t& pos) {
    if (depth == 0) return values[pos++];
    Json arr = Json::array();
    for (int k = 0; k < n; ++k) arr.push_back(nest_values(values, depth - 1, n, pos));
    return arr;
}

std::vector<int> parse_subset_key(const std::string& key) {
    std::vector<int> subset;
    std::stringstream ss(key);
    std::string item;
    while (std::getline(ss, item, ',')) {
        require(!item.empty(), errc::parse, "coefficient key: empty component in \"" + key + "\"");
        for (char c : item)
            require(c >= '0' && c <= '9', errc::parse,
                    "coefficient key: non-numeric component in \"" + key + "\"");
        subset.push_back(std::stoi(item));
    }
    for (std::size_t i = 1; i < subset.size(); ++i)
        require(subset[i] > subset[i - 1], errc::parse,
                "coefficient key must be strictly ascending: \"" + key + "\"");
    return subset;
}

}  // namespace

SymmetricCoefficients coefficients_from_json(const Json& j) {
    require(j.is_object(), errc::parse, "coefficient file: top level must be an object");
    reject_unknown_keys(j, {"n", "d", "coefficients"}, "coefficient file");
    SymmetricCoefficients c(get_int(j, "d", "coefficient file"), get_int(j, "n", "coefficient file"));
    require(c.d >= 1 && c.n >= c.d, errc::parse, "coefficient file: need n >= d >= 1");
    require(j.contains("coefficients") && j["coefficients"].is_object(), errc::parse,
            "coefficient file: \"coefficients\" must be an object");
    for (auto it = j["coefficients"].begin(); it != j["coefficients"].end(); ++it) {
        require(it.value().is_number(), errc::parse, "coefficient file: values must be numbers");
        c.set(parse_subset_key(it.key()), it.value().get<double>());
    }
    return c;
}

Json coefficients_to_json(const SymmetricCoefficients& c) {
    Json coeffs = Json::object();
    for (const auto& [F, v] : c.coefficients) {
        std::string key;
        for (std::size_t k = 0; k < F.size(); ++k)
            key += (k ? "," : "") + std::to_string(F[k]);
        coeffs[key] = v;
    }
    return Json{{"n", c.n}, {"d", c.d}, {"coefficients", coeffs}};
}

DoubleTensor double_tensor_from_json(const Json& j) {
    require(j.is_object(), errc::parse, "tensor file: top level must be an object");
    reject_unknown_keys(j, {"n", "s", "values"}, "tensor file");
    const int n = get_int(j, "n", "tensor file");
    const int s = get_int(j, "s", "tensor file");
    require(n >= 1 && s >= 1, errc::parse, "tensor file: need n >= 1, s >= 1");
    require(j.contains("values"), errc::parse, "tensor file: missing \"values\"");
    std::vector<double> values;
    values.reserve(ipow(n, 2 * s));
    flatten_nested(j["values"], 2 * s, n, values, "tensor file");
    return DoubleTensor(s, n, std::move(values));
}

Json double_tensor_to_json(const DoubleTensor& z) {
    std::size_t pos = 0;
    return Json{{"n", z.n}, {"s", z.s}, {"values", nest_values(z.values, 2 * z.s, z.n, pos)}};
}

DenseTensor dense_tensor_from_json(const Json& j) {
    require(j.is_object(), errc::parse, "tensor file: top level must be an object");
    reject_unknown_keys(j, {"n", "s", "values"}, "tensor file");
    const int n = get_int(j, "n", "tensor file");
    const int s = get_int(j, "s", "tensor file");
    require(n >= 1 && s >= 0, errc::parse, "tensor file: need n >= 1, s >= 0");
    std::vector<double> values;
    values.reserve(ipow(n, s));
    flatten_nested(j["values"], s, n, values, "tensor file");
    return DenseTensor(s, n, std::move(values));
}

Json dense_tensor_to_json(const DenseTensor& t) {
    std::size_t pos = 0;
    return Json{{"n", t.n}, {"s", t.s}, {"values", nest_values(t.values, t.s, t.n, pos)}};
}

ModelSpec model_from_json(const Json& j) {
    require(j.is_object(), errc::parse, "model file: top level must be an object");
    reject_unknown_keys(j, {"kind", "n", "d", "payload"}, "model file");
    require(j.contains("kind") && j["kind"].is_string(), errc::parse,
            "model file: missing \"kind\"");
    ModelSpec m;
    m.n = get_int(j, "n", "model file");
    m.d = j.contains("d") ? get_int(j, "d", "model file") : 1;
    const std::string kind = j["kind"].get<std::string>();
    const Json payload = j.contains("payload") ? j["payload"] : Json::object();
    require(payload.is_object(), errc::parse, "model file: \"payload\" must be an object");

    if (kind == "iid-function") {
        m.kind = ModelKind::iid_function;
        reject_unknown_keys(payload, {"kernel", "p", "alphabet", "probs", "table"},
                            "iid-function payload");
        if (payload.contains("kernel")) {
            const std::string name = payload["kernel"].get<std::string>();
            if (name == "product")
                m = make_product_kernel_model(m.n, m.d);
            else if (name == "centered-and")
                m = make_centered_and_model(m.n, m.d,
                                            payload.value("p", 0.5));
            else if (name == "centered-majority")
                m = make_centered_majority_model(m.n, m.d);
            else
                throw Error(errc::spec, "iid-function: unknown kernel \"" + name + "\"");
        } else {
            require(payload.contains("alphabet") && payload.contains("probs") &&
                        payload.contains("table"),
                    errc::parse, "iid-function payload needs alphabet, probs, table");
            m.alphabet = payload["alphabet"].get<std::vector<double>>();
            m.probs = payload["probs"].get<std::vector<double>>();
            std::vector<double> table;
            table.reserve(ipow(m.alphabet.size(), m.d));
            flatten_nested(payload["table"], m.d, static_cast<int>(m.alphabet.size()), table,
                           "iid-function table");
            m.table = std::move(table);
        }
    } else if (kind == "slice-product") {
        m.kind = ModelKind::slice_product;
        reject_unknown_keys(payload, {"k"}, "slice-product payload");
        m.k = get_int(payload, "k", "slice-product payload");
    } else if (kind == "mixture") {
        m.kind = ModelKind::mixture;
        reject_unknown_keys(payload, {"weights", "components"}, "mixture payload");
        require(payload.contains("weights") && payload.contains("components"), errc::parse,
                "mixture payload needs weights and components");
        m.weights = payload["weights"].get<std::vector<double>>();
        for (const auto& sub : payload["components"]) m.components.push_back(model_from_json(sub));
    } else if (kind == "example-12-4") {
        m.kind = ModelKind::example_12_4;
        reject_unknown_keys(payload, {"epsilon"}, "example-12-4 payload");
        require(payload.contains("epsilon"), errc::parse, "example-12-4 payload needs epsilon");
        m.epsilon = payload["epsilon"].get<double>();
    } else if (kind == "example-12-5") {
        m.kind = ModelKind::example_12_5;
        reject_unknown_keys(payload, {}, "example-12-5 payload");
    } else {
        throw Error(errc::parse, "model file: unknown kind \"" + kind + "\"");
    }
    m.validate();
    return m;
}

Json model_to_json(const ModelSpec& m) {
    Json payload = Json::object();
    std::string kind;
    switch (m.kind) {
        case ModelKind::iid_function: {
            kind = "iid-function";
            payload["alphabet"] = m.alphabet;
            payload["probs"] = m.probs;
            std::size_t pos = 0;
            payload["table"] =
                nest_values(m.table, m.d, static_cast<int>(m.alphabet.size()), pos);
            break;
        }
        case ModelKind::slice_product:
            kind = "slice-product";
            payload["k"] = m.k;
            break;
        case ModelKind::mixture: {
            kind = "mixture";
            payload["weights"] = m.weights;
            Json comps = Json::array();
            for (const auto& c : m.components) comps.push_back(model_to_json(c));
            payload["components"] = comps;
            break;
        }
        case ModelKind::example_12_4:
            kind = "example-12-4";
            payload["epsilon"] = m.epsilon;
            break;
        case ModelKind::example_12_5:
            kind = "example-12-5";
            break;
    }
    return Json{{"kind", kind}, {"n", m.n}, {"d", m.d}, {"payload", payload}};
}

Json params_to_json(const TensorParams& p) {
    Json j;
    j["n"] = p.n;
    j["d"] = p.d;
    j["delta"] = p.delta.delta;
    j["sigma"] = p.sigma.sigma;
    j["osc"] = p.osc;
    j["pc"] = p.pc;
    j["B"] = p.B;
    j["K3"] = p.K3;
    if (p.K4) j["K4"] = *p.K4;
    Json prov;
    prov["kind"] = p.exact ? "exact" : "monte-carlo";
    if (!p.exact) {
        prov["samples"] = p.samples;
        prov["seed"] = p.seed;
        prov["stderr"] = p.stderr_map;
    }
    j["provenance"] = prov;
    if (!p.warnings.empty()) j["warnings"] = p.warnings;
    return j;
}

Json report_to_json(const BoundReport& r) {
    Json j;
    if (r.sigma2) j["sigma2"] = *r.sigma2;
    if (r.sigma1_2) j["sigma1_2"] = *r.sigma1_2;
    j["terms"] = r.terms;
    j["total"] = r.total;
    j["clamped"] = r.clamped;
    j["feasible"] = r.feasible;
    if (!r.binding.empty()) j["binding"] = r.binding;
    j["constants"] = r.constants;
    if (!r.flags.empty()) j["flags"] = r.flags;
    if (!r.extras.empty()) j["extras"] = r.extras;
    if (!r.warnings.empty()) j["warnings"] = r.warnings;
    return j;
}

Json distribution_to_json(const EmpiricalDistribution& d) {
    Json j;
    j["exact"] = d.exact;
    j["support"] = d.support;
    j["probability"] = d.prob;
    return j;
}

std::string distribution_to_csv(const EmpiricalDistribution& d) {
    std::string out = "value,probability\n";
    for (std::size_t k = 0; k < d.support.size(); ++k)
        out += format_double(d.support[k]) + "," + format_double(d.prob[k]) + "\n";
    return out;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), errc::io, "cannot open \"" + path + "\"");
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(errc::parse, std::string("JSON parse error in \"") + path + "\": " + e.what());
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), errc::io, "cannot write \"" + path + "\"");
    out << content;
}

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    if (std::isnan(v)) return "\"nan\"";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void escape_string(const std::string& s, std::string& out) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
}

void render(const Json& j, std::string& out, int indent) {
    const std::string pad(indent * 2, ' ');
    const std::string pad1((indent + 1) * 2, ' ');
    if (j.is_object()) {
        if (j.empty()) { out += "{}"; return; }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {  // map order: keys sorted
            if (!first) out += ",\n";
            first = false;
            out += pad1;
            escape_string(it.key(), out);
            out += ": ";
            render(it.value(), out, indent + 1);
        }
        out += "\n" + pad + "}";
    } else if (j.is_array()) {
        if (j.empty()) { out += "[]"; return; }
        out += "[";
        bool first = true;
        for (const auto& child : j) {
            if (!first) out += ", ";
            first = false;
            render(child, out, indent + 1);
        }
        out += "]";
    } else if (j.is_string()) {
        escape_string(j.get<std::string>(), out);
    } else if (j.is_boolean()) {
        out += j.get<bool>() ? "true" : "false";
    } else if (j.is_number_integer()) {
        out += std::to_string(j.get<long long>());
    } else if (j.is_number_unsigned()) {
        out += std::to_string(j.get<unsigned long long>());
    } else if (j.is_number_float()) {
        out += format_double(j.get<double>());
    } else {
        out += "null";
    }
}

}  // namespace

std::string render_json(const Json& j) {
    std::string out;
    render(j, out, 0);
    out += "\n";
    return out;
}

}  // namespace tensorclt::io
