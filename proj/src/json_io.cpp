#include "appint/json_io.hpp"

#include <charconv>
#include <cstdio>

namespace appint {

namespace {

void require_fields(const Json& j, std::initializer_list<const char*> required,
                    std::initializer_list<const char*> optional, const char* what) {
    for (const char* f : required)
        if (!j.contains(f))
            throw ValidationError(std::string(what) + ": missing field '" + f + "'");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* f : required)
            if (it.key() == f) known = true;
        for (const char* f : optional)
            if (it.key() == f) known = true;
        if (!known)
            throw ValidationError(std::string(what) + ": unknown field '" + it.key() + "'");
    }
}

Complex complex_from_json(const Json& j, const char* what) {
    if (!j.is_array() || j.size() != 2)
        throw ValidationError(std::string(what) + ": expected [re, im]");
    return Complex{j[0].get<double>(), j[1].get<double>()};
}

} // namespace

Json laurent_to_json(const LaurentPolynomial& p) {
    Json j;
    j["low"] = p.low();
    Json coeffs = Json::array();
    for (const Complex& c : p.coeffs()) coeffs.push_back(Json::array({c.real(), c.imag()}));
    j["coeffs"] = std::move(coeffs);
    return j;
}

LaurentPolynomial laurent_from_json(const Json& j) {
    require_fields(j, {"low", "coeffs"}, {}, "polynomial");
    std::vector<Complex> coeffs;
    for (const Json& c : j["coeffs"]) coeffs.push_back(complex_from_json(c, "polynomial coefficient"));
    return LaurentPolynomial(j["low"].get<int>(), std::move(coeffs));
}

Json spectrum_to_json(const SpectrumSpec& s) {
    Json entries = Json::array();
    for (const SpectrumEntry& e : s.entries()) {
        Json entry;
        entry["theta"] = Json::array({e.theta.real(), e.theta.imag()});
        entry["tau"] = e.tau;
        entries.push_back(std::move(entry));
    }
    Json j;
    j["entries"] = std::move(entries);
    return j;
}

SpectrumSpec spectrum_from_json(const Json& j) {
    require_fields(j, {"entries"}, {}, "spectrum");
    std::vector<SpectrumEntry> entries;
    for (const Json& e : j["entries"]) {
        require_fields(e, {"theta", "tau"}, {}, "spectrum entry");
        entries.push_back({complex_from_json(e["theta"], "theta"), e["tau"].get<int>()});
    }
    return SpectrumSpec(std::move(entries));
}

Json selection_to_json(const InterpolatorySelection& sel) {
    Json j;
    j["i"] = sel.i;
    j["star"] = std::string(1, star_char(sel.star));
    return j;
}

InterpolatorySelection selection_from_json(const Json& j) {
    require_fields(j, {"i", "star"}, {}, "selection");
    std::string star = j["star"].get<std::string>();
    if (star != "+" && star != "-")
        throw ValidationError("selection: star must be \"+\" or \"-\"");
    return {j["i"].get<int>(), star == "+" ? Star::Plus : Star::Minus};
}

Json sequence_to_json(const InterpolatorySequence& seq) {
    Json levels = Json::array();
    for (const LevelRecord& rec : seq.levels) {
        Json j;
        j["k"] = rec.k;
        j["m"] = laurent_to_json(rec.m);
        j["residual"] = rec.equation_residual;
        j["margin"] = rec.margin;
        j["selection"] = selection_to_json(rec.selection);
        j["a_hat"] = laurent_to_json(rec.a_hat);
        j["kappa"] = rec.kappa;
        j["p"] = laurent_to_json(rec.cofactor);
        j["interpolation_residual"] = rec.interpolation_residual;
        j["solver"] = rec.solver;
        levels.push_back(std::move(j));
    }
    return levels;
}

InterpolatorySequence sequence_from_json(const Json& j) {
    InterpolatorySequence seq;
    for (const Json& rec_json : j) {
        require_fields(rec_json,
                       {"k", "m", "residual", "margin", "selection", "a_hat", "kappa", "p",
                        "interpolation_residual", "solver"},
                       {}, "sequence level");
        LevelRecord rec;
        rec.k = rec_json["k"].get<int>();
        rec.m = laurent_from_json(rec_json["m"]);
        rec.equation_residual = rec_json["residual"].get<double>();
        rec.margin = rec_json["margin"].get<double>();
        rec.selection = selection_from_json(rec_json["selection"]);
        rec.a_hat = laurent_from_json(rec_json["a_hat"]);
        rec.kappa = rec_json["kappa"].get<int>();
        rec.cofactor = laurent_from_json(rec_json["p"]);
        rec.interpolation_residual = rec_json["interpolation_residual"].get<double>();
        rec.solver = rec_json["solver"].get<std::string>();
        seq.levels.push_back(std::move(rec));
    }
    return seq;
}

namespace {

std::string format_17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void dump_rec(const Json& j, std::string& out, int indent, int depth) {
    std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
    std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in + Json(it.key()).dump() + ": ";
                dump_rec(it.value(), out, indent, depth + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const Json& item : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                dump_rec(item, out, indent, depth + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case Json::value_t::number_float:
            out += format_17(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

} // namespace

std::string dump_deterministic(const Json& j, int indent) {
    std::string out;
    dump_rec(j, out, indent, 0);
    out += "\n";
    return out;
}

std::string format_shortest(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc{}) return format_17(x);
    return std::string(buf, ptr);
}

} // namespace appint
