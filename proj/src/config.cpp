#include "aqc/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace aqc {

namespace {

using nlohmann::json;

const json& require(const json& obj, const std::string& key, const std::string& scope) {
    if (!obj.is_object())
        throw ConfigError("config: expected an object at '" + scope + "'");
    auto it = obj.find(key);
    if (it == obj.end())
        throw ConfigError("config: missing required key '" +
                          (scope.empty() ? key : scope + "." + key) + "'");
    return *it;
}

double require_number(const json& obj, const std::string& key, const std::string& scope) {
    const json& v = require(obj, key, scope);
    if (!v.is_number())
        throw ConfigError("config: key '" + (scope.empty() ? key : scope + "." + key) +
                          "' must be a number");
    return v.get<double>();
}

int require_int(const json& obj, const std::string& key, const std::string& scope) {
    const json& v = require(obj, key, scope);
    if (!v.is_number_integer())
        throw ConfigError("config: key '" + (scope.empty() ? key : scope + "." + key) +
                          "' must be an integer");
    return v.get<int>();
}

} // namespace

ModelSpec model_from_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }

    ModelSpec model;

    const json& lat = require(root, "lattice", "");
    model.lattice.d = require_int(lat, "d", "lattice");
    model.lattice.L = require_int(lat, "L", "lattice");
    {
        const json& b = require(lat, "boundary", "lattice");
        const std::string s = b.is_string() ? b.get<std::string>() : "";
        if (s == "zero") model.lattice.boundary = Boundary::Zero;
        else if (s == "periodic") model.lattice.boundary = Boundary::PeriodicTorus;
        else throw ConfigError("config: key 'lattice.boundary' must be \"zero\" or \"periodic\"");
    }

    const json& inter = require(root, "interaction", "");
    {
        const json& k = require(inter, "kind", "interaction");
        const std::string s = k.is_string() ? k.get<std::string>() : "";
        if (s == "nearest_neighbor") model.interaction.kind = InteractionKind::NearestNeighbor;
        else if (s == "matrix") model.interaction.kind = InteractionKind::ExplicitMatrix;
        else if (s == "exponential_decay") model.interaction.kind = InteractionKind::ExponentialDecay;
        else if (s == "polynomial_decay") model.interaction.kind = InteractionKind::PolynomialDecay;
        else
            throw ConfigError("config: key 'interaction.kind' must be one of "
                              "\"nearest_neighbor\", \"matrix\", \"exponential_decay\", "
                              "\"polynomial_decay\"");
    }
    if (model.interaction.kind == InteractionKind::ExplicitMatrix) {
        const json& m = require(inter, "matrix", "interaction");
        if (!m.is_array())
            throw ConfigError("config: key 'interaction.matrix' must be an array of rows");
        for (const auto& row : m) {
            if (!row.is_array())
                throw ConfigError("config: key 'interaction.matrix' rows must be arrays");
            model.interaction.matrix.push_back(row.get<std::vector<double>>());
        }
    } else {
        model.interaction.J = require_number(inter, "J", "interaction");
        if (model.interaction.kind != InteractionKind::NearestNeighbor)
            model.interaction.alpha0 = require_number(inter, "alpha0", "interaction");
    }

    const json& pot = require(root, "potential", "");
    {
        const json& c = require(pot, "coeffs", "potential");
        if (!c.is_array() || c.empty())
            throw ConfigError("config: key 'potential.coeffs' must be a nonempty array");
        model.potential.coeffs = c.get<std::vector<double>>();
    }
    model.potential.h = pot.contains("h") ? require_number(pot, "h", "potential") : 0.0;

    model.m = require_number(root, "m", "");
    model.a = require_number(root, "a", "");
    model.beta = require_number(root, "beta", "");
    model.nu = root.contains("nu") ? require_int(root, "nu", "") : 1;

    try {
        model.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: invalid model: ") + e.what());
    }
    return model;
}

ModelSpec model_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return model_from_json(ss.str());
}

std::string model_to_json(const ModelSpec& model) {
    json root;
    root["lattice"]["d"] = model.lattice.d;
    root["lattice"]["L"] = model.lattice.L;
    root["lattice"]["boundary"] =
        model.lattice.boundary == Boundary::Zero ? "zero" : "periodic";
    switch (model.interaction.kind) {
    case InteractionKind::NearestNeighbor:
        root["interaction"]["kind"] = "nearest_neighbor";
        root["interaction"]["J"] = model.interaction.J;
        break;
    case InteractionKind::ExplicitMatrix:
        root["interaction"]["kind"] = "matrix";
        root["interaction"]["matrix"] = model.interaction.matrix;
        break;
    case InteractionKind::ExponentialDecay:
        root["interaction"]["kind"] = "exponential_decay";
        root["interaction"]["J"] = model.interaction.J;
        root["interaction"]["alpha0"] = model.interaction.alpha0;
        break;
    case InteractionKind::PolynomialDecay:
        root["interaction"]["kind"] = "polynomial_decay";
        root["interaction"]["J"] = model.interaction.J;
        root["interaction"]["alpha0"] = model.interaction.alpha0;
        break;
    }
    root["potential"]["coeffs"] = model.potential.coeffs;
    root["potential"]["h"] = model.potential.h;
    root["m"] = model.m;
    root["a"] = model.a;
    root["beta"] = model.beta;
    root["nu"] = model.nu;
    return root.dump(2);
}

} // namespace aqc
