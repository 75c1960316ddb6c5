#include "scatterbound/potential_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "scatterbound/errors.hpp"

namespace scatterbound {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

struct RawDoc {
    std::string kind;
    std::map<std::string, double> nums;
    std::map<std::string, std::vector<double>> lists;
    std::map<std::string, std::string> words;
};

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::istringstream is(s);
    double v;
    while (is >> v) out.push_back(v);
    return out;
}

// Parameter names are kept verbatim: several named families distinguish an
// amplitude 'A' from a length 'a'.
void assign(RawDoc& doc, const std::string& key, const std::string& val) {
    if (lower(key) == "kind") {
        doc.kind = lower(val);
        return;
    }
    std::istringstream is(val);
    double num;
    if ((is >> num) && (is >> std::ws).eof()) {
        doc.nums[key] = num;
        return;
    }
    auto list = parse_list(val);
    if (list.size() > 1) {
        doc.lists[lower(key)] = std::move(list);
        return;
    }
    doc.words[lower(key)] = lower(val);
}

// Case-insensitive lookup for the fixed families' parameters (V0, L, Vminus, ...).
const double* find_ci(const RawDoc& doc, const std::string& key) {
    for (const auto& [k, v] : doc.nums)
        if (lower(k) == lower(key)) return &v;
    return nullptr;
}

double need(const RawDoc& doc, const std::string& key) {
    if (const double* v = find_ci(doc, key)) return *v;
    throw UnsupportedFamily("potential document: missing parameter '" + key + "'");
}

double opt(const RawDoc& doc, const std::string& key, double fallback) {
    const double* v = find_ci(doc, key);
    return v ? *v : fallback;
}

PotentialSpec from_doc(const RawDoc& doc) {
    const std::string& kind = doc.kind;
    if (kind.empty()) throw UnsupportedFamily("potential document: missing 'kind'");

    if (kind == "free") return FreePotential{opt(doc, "vinf", 0.0)};
    if (kind == "step") return StepPotential{need(doc, "vminus"), need(doc, "vplus")};
    if (kind == "delta") return DeltaPotential{need(doc, "g"), opt(doc, "x0", 0.0)};
    if (kind == "double_delta") return DoubleDeltaPotential{need(doc, "g"), need(doc, "d")};
    if (kind == "square_barrier")
        return SquareBarrierPotential{need(doc, "v0"), need(doc, "l")};
    if (kind == "asym_square_well")
        return AsymSquareWellPotential{need(doc, "v1"), need(doc, "v2"), need(doc, "v3"),
                                       need(doc, "a"), need(doc, "b")};
    if (kind == "tanh")
        return TanhPotential{need(doc, "vminus"), need(doc, "vplus"), need(doc, "l")};
    if (kind == "sech2") return Sech2Potential{need(doc, "ve"), need(doc, "l")};
    if (kind == "poschl_teller")
        return PoschlTellerPotential{need(doc, "v0"), need(doc, "vinf"), need(doc, "l")};
    if (kind == "mobius") {
        MobiusPotential m;
        m.v0 = opt(doc, "v0", 0.0);
        m.v1 = opt(doc, "v1", 1.0);
        m.A = need(doc, "a_num");
        m.B = need(doc, "b_num");
        m.C = need(doc, "c_den");
        m.D = need(doc, "d_den");
        m.a = need(doc, "a");
        return m;
    }
    if (kind == "sampled") {
        auto xs = doc.lists.find("x");
        auto vs = doc.lists.find("v");
        if (xs == doc.lists.end() || vs == doc.lists.end())
            throw UnsupportedFamily("sampled potential needs 'x' and 'v' lists");
        SampledPotential s;
        s.x = xs->second;
        s.v = vs->second;
        s.v_minus = opt(doc, "vminus", s.v.front());
        s.v_plus = opt(doc, "vplus", s.v.back());
        return s;
    }

    static const std::map<std::string, NamedFamily> named = {
        {"eckart", NamedFamily::Eckart},         {"rosen_morse", NamedFamily::RosenMorse},
        {"morse", NamedFamily::Morse},           {"manning_rosen", NamedFamily::ManningRosen},
        {"hulthen", NamedFamily::Hulthen},       {"tietz", NamedFamily::Tietz},
        {"hua", NamedFamily::Hua}};
    auto nit = named.find(kind);
    if (nit != named.end()) {
        NamedPotential np;
        np.family = nit->second;
        for (const auto& [k, v] : doc.nums) {
            // keys pass through verbatim; only the common v0/x0 spellings normalize
            std::string key = k;
            if (lower(key) == "v0") key = "V0";
            else if (lower(key) == "x0") key = "x0";
            np.params[key] = v;
        }
        auto wit = doc.words.find("denominator");
        if (wit != doc.words.end()) {
            if (wit->second == "sinh") np.tietz_denominator = TietzDenominator::Sinh;
            else if (wit->second == "cosh") np.tietz_denominator = TietzDenominator::Cosh;
            else if (wit->second == "exp") np.tietz_denominator = TietzDenominator::Exp;
            else throw UnsupportedFamily("tietz denominator must be sinh, cosh or exp");
        }
        return np;
    }

    throw UnsupportedFamily("unknown potential kind '" + kind + "'");
}

} // namespace

PotentialSpec parse_potential_document(const std::string& text) {
    RawDoc doc;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UnsupportedFamily("potential document: expected 'key = value' lines");
        assign(doc, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return from_doc(doc);
}

PotentialSpec parse_potential_inline(const std::string& text) {
    const auto colon = text.find(':');
    RawDoc doc;
    doc.kind = lower(trim(colon == std::string::npos ? text : text.substr(0, colon)));
    if (colon != std::string::npos) {
        std::istringstream is(text.substr(colon + 1));
        std::string item;
        while (std::getline(is, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                throw UnsupportedFamily("inline potential: expected name=value pairs");
            assign(doc, trim(item.substr(0, eq)), trim(item.substr(eq + 1)));
        }
    }
    return from_doc(doc);
}

PotentialSpec load_potential(const std::string& path_or_inline) {
    std::ifstream f(path_or_inline);
    if (f.good()) {
        std::ostringstream ss;
        ss << f.rdbuf();
        return parse_potential_document(ss.str());
    }
    return parse_potential_inline(path_or_inline);
}

} // namespace scatterbound
