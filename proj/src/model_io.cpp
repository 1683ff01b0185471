#include "latspec/model_io.hpp"

#include "latspec/error.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace latspec {

using nlohmann::json;

namespace {

void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw ParseError(path.empty() ? "/" : path, "expected an object");
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* k : allowed) known = known || item.key() == k;
        if (!known) throw ParseError(path + "/" + item.key(), "unknown key");
    }
}

const json& required(const json& obj, const std::string& path, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(path + "/" + key, "missing required key '" + std::string(key) + "'");
    return *it;
}

double real_at(const json& v, const std::string& path) {
    if (!v.is_number()) throw ParseError(path, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ParseError(path, "expected a finite number");
    return x;
}

int int_at(const json& v, const std::string& path, int min_value) {
    if (!v.is_number_integer()) throw ParseError(path, "expected an integer");
    const auto x = v.get<long long>();
    if (x < min_value || x > 1'000'000) {
        throw ParseError(path, "expected an integer >= " + std::to_string(min_value));
    }
    return static_cast<int>(x);
}

CosineSeries series_at(const json& v, const std::string& path) {
    only_keys(v, path, {"constant", "harmonics", "dimension"});
    CosineSeries s;
    s.constant = real_at(required(v, path, "constant"), path + "/constant");
    if (auto it = v.find("dimension"); it != v.end()) s.dimension = int_at(*it, path + "/dimension", 1);
    if (auto it = v.find("harmonics"); it != v.end()) {
        if (!it->is_array()) throw ParseError(path + "/harmonics", "expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string hp = path + "/harmonics/" + std::to_string(i);
            const json& h = (*it)[i];
            only_keys(h, hp, {"m", "cos", "sin"});
            Harmonic term;
            term.order = int_at(required(h, hp, "m"), hp + "/m", 1);
            if (auto c = h.find("cos"); c != h.end()) term.cos_coeff = real_at(*c, hp + "/cos");
            if (auto c = h.find("sin"); c != h.end()) term.sin_coeff = real_at(*c, hp + "/sin");
            s.harmonics.push_back(term);
        }
    }
    return s;
}

json series_json(const CosineSeries& s) {
    json h = json::array();
    for (const auto& t : s.harmonics) h.push_back({{"m", t.order}, {"cos", t.cos_coeff}, {"sin", t.sin_coeff}});
    json out = {{"constant", s.constant}, {"harmonics", h}};
    if (s.dimension != 0) out["dimension"] = s.dimension;
    return out;
}

}  // namespace

ModelSpec model_from_json(const json& doc) {
    only_keys(doc, "", {"dimension", "w0", "w1", "w2", "v0", "v1"});
    ModelSpec spec;
    spec.dimension = int_at(required(doc, "", "dimension"), "/dimension", 1);
    spec.w0 = series_at(required(doc, "", "w0"), "/w0");

    const json& w1 = required(doc, "", "w1");
    only_keys(w1, "/w1", {"self", "pair", "const"});
    spec.w1_self = series_at(required(w1, "/w1", "self"), "/w1/self");
    spec.w1_pair = series_at(required(w1, "/w1", "pair"), "/w1/pair");
    spec.w1_const = real_at(required(w1, "/w1", "const"), "/w1/const");

    const json& w2 = required(doc, "", "w2");
    only_keys(w2, "/w2", {"const", "single", "recoil"});
    spec.w2_const = real_at(required(w2, "/w2", "const"), "/w2/const");
    spec.w2_single = series_at(required(w2, "/w2", "single"), "/w2/single");
    spec.w2_recoil = series_at(required(w2, "/w2", "recoil"), "/w2/recoil");

    spec.v0 = series_at(required(doc, "", "v0"), "/v0");
    spec.v1 = series_at(required(doc, "", "v1"), "/v1");
    return spec;
}

json model_to_json(const ModelSpec& spec) {
    return {{"dimension", spec.dimension},
            {"w0", series_json(spec.w0)},
            {"w1", {{"self", series_json(spec.w1_self)}, {"pair", series_json(spec.w1_pair)}, {"const", spec.w1_const}}},
            {"w2",
             {{"const", spec.w2_const}, {"single", series_json(spec.w2_single)}, {"recoil", series_json(spec.w2_recoil)}}},
            {"v0", series_json(spec.v0)},
            {"v1", series_json(spec.v1)}};
}

ModelSpec parse_model(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("/", std::string("invalid JSON: ") + e.what());
    }
    return model_from_json(doc);
}

ModelSpec load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("", "cannot read model file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

}  // namespace latspec
