#include "amkt/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace amkt {

namespace {

using nlohmann::json;

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001B3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

const json& require(const json& obj, const std::string& path, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw SchemaError(path, "missing required field");
    }
    return *it;
}

double require_number(const json& obj, const std::string& path, const char* key) {
    const json& v = require(obj, path, key);
    if (!v.is_number()) throw SchemaError(path, "expected a number");
    return v.get<double>();
}

std::string require_string(const json& obj, const std::string& path, const char* key) {
    const json& v = require(obj, path, key);
    if (!v.is_string()) throw SchemaError(path, "expected a string");
    return v.get<std::string>();
}

std::uint64_t require_uint(const json& obj, const std::string& path, const char* key) {
    const json& v = require(obj, path, key);
    if (!v.is_number_integer() && !v.is_number_unsigned()) {
        throw SchemaError(path, "expected an integer");
    }
    if (v.is_number_integer() && v.get<std::int64_t>() < 0) {
        throw ValidationError(path, "must be nonnegative");
    }
    return v.get<std::uint64_t>();
}

CostDistribution parse_cost(const json& j) {
    if (!j.is_object()) throw SchemaError("market.cost", "expected an object");
    const std::string family = require_string(j, "market.cost.family", "family");
    try {
        if (family == "uniform") {
            const double lo = require_number(j, "market.cost.lo", "lo");
            const double hi = require_number(j, "market.cost.hi", "hi");
            if (!(lo < hi)) throw ValidationError("market.cost.lo", "requires lo < hi");
            return CostDistribution::uniform(lo, hi);
        }
        if (family == "exponential") {
            const double rate = require_number(j, "market.cost.rate", "rate");
            if (!(rate > 0.0)) throw ValidationError("market.cost.rate", "must be > 0");
            return CostDistribution::exponential(rate);
        }
        if (family == "logistic") {
            const double location = require_number(j, "market.cost.location", "location");
            const double scale = require_number(j, "market.cost.scale", "scale");
            if (!(scale > 0.0)) throw ValidationError("market.cost.scale", "must be > 0");
            return CostDistribution::logistic(location, scale);
        }
    } catch (const DomainError& e) {
        throw ValidationError("market.cost", e.what());
    }
    throw SchemaError("market.cost.family",
                      "unknown family (expected uniform, exponential or logistic)");
}

MarketParams parse_market(const json& j) {
    if (!j.is_object()) throw SchemaError("market", "expected an object");
    const double v = require_number(j, "market.v", "v");
    const double delta_u = require_number(j, "market.delta_u", "delta_u");
    const double m = require_number(j, "market.m", "m");
    if (!(v > 0.0)) throw ValidationError("market.v", "must be > 0");
    if (!(delta_u > 0.0)) throw ValidationError("market.delta_u", "must be > 0");
    if (!(m >= 0.0)) throw ValidationError("market.m", "must be >= 0");
    return MarketParams(v, delta_u, m, parse_cost(require(j, "market.cost", "cost")));
}

std::vector<PublisherProfile> parse_publishers(const json& j) {
    if (!j.is_array() || j.empty()) {
        throw SchemaError("publishers", "expected a nonempty array");
    }
    std::vector<PublisherProfile> out;
    out.reserve(j.size());
    std::set<std::string> seen;
    double share_sum = 0.0;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string base = "publishers[" + std::to_string(i) + "]";
        const json& e = j[i];
        if (!e.is_object()) throw SchemaError(base, "expected an object");
        const std::string id = require_string(e, base + ".id", "id");
        if (!seen.insert(id).second) {
            throw ValidationError(base + ".id", "duplicate publisher id '" + id + "'");
        }
        const double s = require_number(e, base + ".s", "s");
        const double theta = require_number(e, base + ".theta", "theta");
        const double k = require_number(e, base + ".k", "k");
        const double lambda = require_number(e, base + ".lambda", "lambda");
        const double phi = require_number(e, base + ".phi", "phi");
        if (!(s > 0.0 && s <= 1.0)) throw ValidationError(base + ".s", "must lie in (0,1]");
        if (!(theta > 0.0)) throw ValidationError(base + ".theta", "must be > 0");
        if (!(k > 0.0)) throw ValidationError(base + ".k", "must be > 0");
        if (!(lambda >= 0.0 && lambda <= 1.0)) {
            throw ValidationError(base + ".lambda", "must lie in [0,1]");
        }
        if (!(phi >= 0.0)) throw ValidationError(base + ".phi", "must be >= 0");
        out.emplace_back(id, s, theta, k, lambda, phi);
        share_sum += s;
    }
    if (std::fabs(share_sum - 1.0) > 1e-9) {
        std::ostringstream os;
        os << "shares sum to " << share_sum << ", expected 1 within 1e-9";
        throw ValidationError("publishers.s", os.str());
    }
    return out;
}

AgentValuation parse_agent_valuation(const json& j) {
    if (!j.is_object()) throw SchemaError("agent_valuation", "expected an object");
    const double b = require_number(j, "agent_valuation.B", "B");
    const double b_alt = require_number(j, "agent_valuation.B_alt", "B_alt");
    const double c_f = require_number(j, "agent_valuation.C_F", "C_F");
    if (!(b_alt < b)) throw ValidationError("agent_valuation.B_alt", "must satisfy B_alt < B");
    if (!(c_f > 0.0)) throw ValidationError("agent_valuation.C_F", "must be > 0");
    return AgentValuation(b, b_alt, c_f);
}

SimSpec parse_sim(const json& j) {
    if (!j.is_object()) throw SchemaError("sim", "expected an object");
    SimSpec spec{};
    const std::uint64_t m_users = require_uint(j, "sim.m_users", "m_users");
    if (m_users < 1) throw ValidationError("sim.m_users", "must be >= 1");
    spec.base.m_users = static_cast<std::size_t>(m_users);
    spec.base.seed = require_uint(j, "sim.seed", "seed");
    if (auto it = j.find("tau"); it != j.end()) {
        if (!it->is_number()) throw SchemaError("sim.tau", "expected a number");
        spec.base.tau = it->get<double>();
    }
    if (auto it = j.find("seeds"); it != j.end()) {
        if (!it->is_array()) throw SchemaError("sim.seeds", "expected an array of integers");
        for (const auto& e : *it) {
            if (!e.is_number_integer() && !e.is_number_unsigned()) {
                throw SchemaError("sim.seeds", "expected an array of integers");
            }
            spec.seeds.push_back(e.get<std::uint64_t>());
        }
    }
    if (auto it = j.find("m_grid"); it != j.end()) {
        if (!it->is_array()) throw SchemaError("sim.m_grid", "expected an array of integers");
        for (const auto& e : *it) {
            if (!e.is_number_integer() && !e.is_number_unsigned() || e.get<std::int64_t>() < 1) {
                throw SchemaError("sim.m_grid", "expected an array of positive integers");
            }
            spec.m_grid.push_back(e.get<std::size_t>());
        }
    }
    if (spec.seeds.empty() != spec.m_grid.empty()) {
        throw ValidationError("sim.seeds", "seeds and m_grid must be given together");
    }
    return spec;
}

SweepSpec parse_sweep(const json& j) {
    if (!j.is_object()) throw SchemaError("sweep", "expected an object");
    SweepSpec spec{};
    spec.param = require_string(j, "sweep.param", "param");
    spec.lo = require_number(j, "sweep.lo", "lo");
    spec.hi = require_number(j, "sweep.hi", "hi");
    const json& steps = require(j, "sweep.steps", "steps");
    if (!steps.is_number_integer() && !steps.is_number_unsigned()) {
        throw SchemaError("sweep.steps", "expected an integer");
    }
    spec.steps = steps.get<int>();
    if (spec.steps < 2) throw ValidationError("sweep.steps", "must be >= 2");
    if (!(spec.lo < spec.hi)) throw ValidationError("sweep.lo", "requires lo < hi");
    return spec;
}

void validate_sweep_against(const Scenario& sc) {
    if (!sc.sweep) return;
    const SweepSpec& sw = *sc.sweep;
    if (!is_sweepable_path(sc, sw.param)) {
        throw ValidationError("sweep.param",
                              "'" + sw.param + "' does not name a sweepable numeric scalar");
    }
    if (sw.param == "a" && (sw.lo < 0.0 || sw.hi > 1.0)) {
        throw ValidationError("sweep.lo", "share sweep must stay within [0,1]");
    }
}

struct PathTarget {
    enum Kind { MarketScalar, CostParam, PublisherScalar, Tax, SimTau, ForcedShare } kind;
    int index = 0;     // publisher index
    std::string leaf;  // field name
};

std::optional<PathTarget> resolve_path(const Scenario& sc, const std::string& path) {
    if (path == "a") return PathTarget{PathTarget::ForcedShare, 0, "a"};
    if (path == "tax") {
        if (sc.tax_mode != TaxMode::Fixed) return std::nullopt; // nothing numeric to mutate
        return PathTarget{PathTarget::Tax, 0, "tax"};
    }
    if (path == "sim.tau") {
        if (!sc.sim) return std::nullopt;
        return PathTarget{PathTarget::SimTau, 0, "tau"};
    }
    if (path == "market.v" || path == "market.delta_u" || path == "market.m") {
        return PathTarget{PathTarget::MarketScalar, 0, path.substr(7)};
    }
    if (path.rfind("market.cost.", 0) == 0) {
        const std::string leaf = path.substr(12);
        const CostFamily fam = sc.market.cost.family();
        const bool ok = (fam == CostFamily::Uniform && (leaf == "lo" || leaf == "hi")) ||
                        (fam == CostFamily::Exponential && leaf == "rate") ||
                        (fam == CostFamily::Logistic && (leaf == "location" || leaf == "scale"));
        if (!ok) return std::nullopt;
        return PathTarget{PathTarget::CostParam, 0, leaf};
    }
    if (path.rfind("publishers.", 0) == 0) {
        const std::string rest = path.substr(11);
        const auto dot = rest.find('.');
        if (dot == std::string::npos) return std::nullopt;
        int index = -1;
        try {
            std::size_t used = 0;
            index = std::stoi(rest.substr(0, dot), &used);
            if (used != dot) return std::nullopt;
        } catch (const std::exception&) {
            return std::nullopt;
        }
        if (index < 0 || static_cast<std::size_t>(index) >= sc.publishers.size()) {
            return std::nullopt;
        }
        const std::string leaf = rest.substr(dot + 1);
        // Sweeping a share would break the roster-sum invariant.
        if (leaf == "theta" || leaf == "k" || leaf == "lambda" || leaf == "phi") {
            return PathTarget{PathTarget::PublisherScalar, index, leaf};
        }
        return std::nullopt;
    }
    return std::nullopt;
}

} // namespace

Scenario parse_scenario(const std::string& text, const std::string& source_name) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("scenario is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw SchemaError("<root>", "expected a JSON object");

    Scenario sc{parse_market(require(root, "market", "market")),
                parse_publishers(require(root, "publishers", "publishers"))};
    sc.source_name = source_name;
    sc.digest = fnv1a_hex(text);

    if (auto it = root.find("agent_valuation"); it != root.end()) {
        sc.agent_valuation = parse_agent_valuation(*it);
    }
    if (auto it = root.find("tax"); it != root.end()) {
        if (it->is_number()) {
            sc.tax_mode = TaxMode::Fixed;
            sc.tax_value = it->get<double>();
        } else if (it->is_string() && it->get<std::string>() == "pigouvian") {
            sc.tax_mode = TaxMode::Pigouvian;
        } else {
            throw SchemaError("tax", "expected a number or the string \"pigouvian\"");
        }
    }
    if (auto it = root.find("sim"); it != root.end()) {
        sc.sim = parse_sim(*it);
    }
    if (auto it = root.find("sweep"); it != root.end()) {
        sc.sweep = parse_sweep(*it);
    }
    validate_sweep_against(sc);
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open scenario file: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoError("failed reading scenario file: " + path.string());
    }
    return parse_scenario(buf.str(), path.filename().string());
}

bool is_sweepable_path(const Scenario& sc, const std::string& path) {
    return resolve_path(sc, path).has_value();
}

Scenario with_scalar(const Scenario& sc, const std::string& path, double value) {
    const auto target = resolve_path(sc, path);
    if (!target) {
        throw ValidationError("sweep.param",
                              "'" + path + "' does not name a sweepable numeric scalar");
    }
    Scenario out = sc;
    try {
        switch (target->kind) {
        case PathTarget::MarketScalar: {
            double v = sc.market.v, du = sc.market.delta_u, m = sc.market.m;
            if (target->leaf == "v") v = value;
            else if (target->leaf == "delta_u") du = value;
            else m = value;
            out.market = MarketParams(v, du, m, sc.market.cost);
            break;
        }
        case PathTarget::CostParam: {
            CostDistribution::Spec spec = sc.market.cost.spec();
            if (auto* u = std::get_if<CostDistribution::Uniform>(&spec)) {
                (target->leaf == "lo" ? u->lo : u->hi) = value;
            } else if (auto* e = std::get_if<CostDistribution::Exponential>(&spec)) {
                e->rate = value;
            } else {
                auto& l = std::get<CostDistribution::Logistic>(spec);
                (target->leaf == "location" ? l.location : l.scale) = value;
            }
            out.market = MarketParams(sc.market.v, sc.market.delta_u, sc.market.m,
                                      CostDistribution(spec));
            break;
        }
        case PathTarget::PublisherScalar: {
            PublisherProfile p = sc.publishers[static_cast<std::size_t>(target->index)];
            if (target->leaf == "theta") p.theta = value;
            else if (target->leaf == "k") p.k = value;
            else if (target->leaf == "lambda") p.lambda = value;
            else p.phi = value;
            // re-run the constructor checks
            out.publishers[static_cast<std::size_t>(target->index)] =
                PublisherProfile(p.id, p.s, p.theta, p.k, p.lambda, p.phi);
            break;
        }
        case PathTarget::Tax:
            out.tax_value = value;
            break;
        case PathTarget::SimTau:
            out.sim->base.tau = value;
            break;
        case PathTarget::ForcedShare:
            throw ValidationError("sweep.param", "'a' is not a scenario field");
        }
    } catch (const DomainError& e) {
        throw ValidationError(path, e.what());
    }
    return out;
}

} // namespace amkt
