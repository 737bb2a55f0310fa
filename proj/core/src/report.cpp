#include "amkt/report.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <thread>

namespace amkt {

namespace {

std::string fmt_double(double x) {
    if (!std::isfinite(x)) {
        throw NonFiniteOutput("attempted to emit a non-finite number");
    }
    if (x == 0.0) return "0"; // folds -0 as well
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string json_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char b[8];
                std::snprintf(b, sizeof b, "\\u%04x", c);
                out += b;
            } else {
                out += c;
            }
        }
    }
    return out;
}

class JsonWriter {
public:
    JsonWriter() { levels_.push_back(true); }

    std::string take() && {
        out_ += '\n';
        return std::move(out_);
    }

    void begin_object() {
        out_ += '{';
        levels_.push_back(true);
    }
    void end_object() { close('}'); }
    void begin_array() {
        out_ += '[';
        levels_.push_back(true);
    }
    void end_array() { close(']'); }

    void key(std::string_view k) {
        sep();
        out_ += '"';
        out_ += json_escape(k);
        out_ += "\": ";
    }
    void array_item() { sep(); }

    void value(double v) { out_ += fmt_double(v); }
    void value(bool b) { out_ += b ? "true" : "false"; }
    void value(std::uint64_t u) { out_ += std::to_string(u); }
    void value_str(std::string_view s) {
        out_ += '"';
        out_ += json_escape(s);
        out_ += '"';
    }

private:
    void close(char c) {
        const bool empty = levels_.back();
        levels_.pop_back();
        if (!empty) newline_indent();
        out_ += c;
    }
    void sep() {
        if (!levels_.back()) out_ += ',';
        levels_.back() = false;
        newline_indent();
    }
    void newline_indent() {
        out_ += '\n';
        out_.append(2 * (levels_.size() - 1), ' ');
    }

    std::string out_;
    std::vector<bool> levels_;
};

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string_view::npos) {
        return std::string(s);
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

// Visit every number the emitters would write, for the finite-output check.
template <typename Fn>
void for_each_number(const RunReport& r, Fn&& fn) {
    if (r.equilibrium) {
        fn("equilibrium.a_priv", r.equilibrium->a_priv);
        fn("equilibrium.a_star", r.equilibrium->a_star);
        fn("equilibrium.a_eval", r.equilibrium->a_eval);
        fn("equilibrium.price", r.equilibrium->price);
    }
    if (r.welfare) {
        const auto visit_point = [&](const char* tag, const WelfarePoint& p) {
            const std::string base = std::string("welfare.") + tag;
            fn(base + ".a", p.a);
            fn(base + ".user_surplus", p.w.user_surplus);
            fn(base + ".publisher_revenue", p.w.publisher_revenue);
            fn(base + ".ai_profit", p.w.ai_profit);
            fn(base + ".total", p.w.total);
        };
        visit_point("at_eval", r.welfare->at_eval);
        visit_point("at_star", r.welfare->at_star);
        fn("welfare.deadweight_loss", r.welfare->deadweight_loss);
        fn("welfare.mispricing.human_surplus_per_impression",
           r.welfare->mispricing_at_eval.human_surplus_per_impression);
        fn("welfare.mispricing.ai_loss_per_impression",
           r.welfare->mispricing_at_eval.ai_loss_per_impression);
        fn("welfare.mispricing.expected_surplus",
           r.welfare->mispricing_at_eval.expected_surplus);
    }
    if (r.strategy) {
        fn("strategy.a_eval", r.strategy->a_eval);
        for (const auto& row : r.strategy->publishers) {
            const std::string base = "strategy." + row.id;
            fn(base + ".revenue_null", row.outcome.revenue_null);
            fn(base + ".revenue_blocking", row.outcome.revenue_blocking);
            fn(base + ".revenue_tolling", row.outcome.revenue_tolling);
            fn(base + ".optimal_toll", row.outcome.optimal_toll);
        }
    }
    if (r.tax) {
        fn("tax.tau", r.tax->tau);
        fn("tax.a_of_tau", r.tax->eq.a_of_tau);
        fn("tax.welfare_at_a", r.tax->eq.welfare_at_a);
        fn("tax.dwl_remaining", r.tax->eq.dwl_remaining);
        fn("tax.agent_fee", r.tax->passthrough.agent_fee);
        fn("tax.user_fee", r.tax->passthrough.user_fee);
    }
    if (r.collapse && r.collapse->viable()) {
        const CollapseReport& c = *r.collapse->report;
        fn("collapse.a_c", c.a_c);
        fn("collapse.pi_at_root", c.pi_at_root);
        fn("collapse.stability_slope", c.stability_slope);
        fn("collapse.d_ac_dv", c.d_ac_dv);
        fn("collapse.d_ac_dtheta", c.d_ac_dtheta);
        fn("collapse.d_ac_dphi", c.d_ac_dphi);
        for (const auto& w : c.recovery_windows) {
            fn("collapse.recovery_windows.lo", w.lo);
            fn("collapse.recovery_windows.hi", w.hi);
        }
    }
    if (r.montecarlo) {
        fn("montecarlo.tau", r.montecarlo->cfg.tau);
        if (r.montecarlo->single) {
            const SimResult& s = *r.montecarlo->single;
            fn("montecarlo.a_hat", s.a_hat);
            fn("montecarlo.a_true", s.a_true);
            fn("montecarlo.price_hat", s.price_hat);
            fn("montecarlo.ci_halfwidth", s.ci_halfwidth);
            for (const auto& [id, rev] : s.per_publisher_revenue) {
                fn("montecarlo.per_publisher_revenue." + id, rev);
            }
        }
        for (const auto& row : r.montecarlo->rows) {
            fn("montecarlo.rows.a_hat", row.a_hat);
            fn("montecarlo.rows.a_true", row.a_true);
            fn("montecarlo.rows.abs_error", row.abs_error);
            fn("montecarlo.rows.ci_halfwidth", row.ci_halfwidth);
        }
        if (r.montecarlo->loglog_slope) {
            fn("montecarlo.loglog_slope", *r.montecarlo->loglog_slope);
        }
    }
    if (r.sweep) {
        for (const auto& p : r.sweep->points) {
            fn("sweep.value", p.value);
            for (const auto& [name, value] : p.metrics) {
                fn("sweep." + name, value);
            }
        }
    }
}

void check_finite(const RunReport& r) {
    std::string bad;
    int count = 0;
    for_each_number(r, [&](const std::string& name, double v) {
        if (!std::isfinite(v)) {
            if (count < 8) {
                if (!bad.empty()) bad += ", ";
                bad += name;
            }
            ++count;
        }
    });
    if (count > 0) {
        throw NonFiniteOutput("non-finite values in report: " + bad +
                              (count > 8 ? ", ..." : ""));
    }
}

std::size_t sweep_thread_count(std::size_t n) {
    std::size_t cap = std::thread::hardware_concurrency();
    if (cap == 0) cap = 1;
    if (const char* env = std::getenv("AMKT_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) cap = v;
    }
    return std::min(cap, n);
}

void fill_point(const Scenario& sc, const RunOptions& opt, RunReport& rep) {
    const MarketParams& mp = sc.market;
    const AnalysisSet& req = opt.analyses;
    const double a_priv = private_equilibrium(mp);
    const double a_star = social_optimum(mp);
    const double a_eval = opt.forced_share.value_or(a_priv);

    if (req.equilibrium) {
        rep.equilibrium =
            EquilibriumBlock{a_priv, a_star, a_eval, impression_price(mp.v, a_eval)};
    }
    if (req.welfare) {
        WelfareBlock wb{};
        wb.at_eval = WelfarePoint{a_eval, social_welfare(a_eval, mp)};
        wb.at_star = WelfarePoint{a_star, social_welfare(a_star, mp)};
        wb.deadweight_loss = deadweight_loss(mp);
        wb.mispricing_at_eval = mispricing(a_eval, mp.v);
        rep.welfare = wb;
    }
    if (req.strategy) {
        StrategyBlock sb{a_eval, {}};
        sb.publishers.reserve(sc.publishers.size());
        for (const auto& pub : sc.publishers) {
            sb.publishers.push_back(
                StrategyRow{pub.id, best_strategy(pub, mp.v, a_eval, sc.agent_valuation)});
        }
        rep.strategy = std::move(sb);
    }
    if (req.tax) {
        const double tau =
            sc.tax_mode == TaxMode::Pigouvian ? pigouvian_fee(mp) : sc.tax_value;
        rep.tax = TaxBlock{tau, tau < 0.0, taxed_equilibrium(mp, tau), fee_passthrough(tau)};
    }
    if (req.collapse) {
        CollapseBlock cb{};
        try {
            cb.report = critical_threshold(sc.publishers, mp.v);
        } catch (const NotViableAtZero& e) {
            cb.error = "NotViableAtZero";
            cb.message = e.what();
        } catch (const NoCollapse& e) {
            cb.error = "NoCollapse";
            cb.message = e.what();
        }
        rep.collapse = std::move(cb);
    }
    if (req.montecarlo) {
        const SimSpec& spec = *sc.sim;
        MonteCarloBlock mb{};
        mb.cfg = spec.base;
        if (opt.seed_override) {
            mb.cfg.seed = *opt.seed_override;
            mb.seed_source = "cli";
        } else {
            mb.seed_source = "scenario";
        }
        if (spec.convergence()) {
            mb.rows = convergence_sweep(mp, spec.seeds, spec.m_grid, mb.cfg.tau);
            if (spec.m_grid.size() >= 2) {
                mb.loglog_slope = loglog_error_slope(mb.rows);
            }
        } else {
            mb.single = simulate_delegation(mp, mb.cfg, sc.publishers);
        }
        rep.montecarlo = std::move(mb);
    }
}

} // namespace

AnalysisSet parse_analyses(const std::string& csv) {
    AnalysisSet set{};
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        std::size_t comma = csv.find(',', pos);
        if (comma == std::string::npos) comma = csv.size();
        std::string name = csv.substr(pos, comma - pos);
        // trim
        while (!name.empty() && name.front() == ' ') name.erase(name.begin());
        while (!name.empty() && name.back() == ' ') name.pop_back();
        if (!name.empty()) {
            if (name == "equilibrium") set.equilibrium = true;
            else if (name == "welfare") set.welfare = true;
            else if (name == "strategy") set.strategy = true;
            else if (name == "tax") set.tax = true;
            else if (name == "collapse") set.collapse = true;
            else if (name == "montecarlo") set.montecarlo = true;
            else if (name == "sweep") set.sweep = true;
            else throw ValidationError("analyses", "unknown analysis '" + name + "'");
        }
        pos = comma + 1;
    }
    if (!set.any()) throw ValidationError("analyses", "no analyses requested");
    return set;
}

AnalysisSet applicable_analyses(const Scenario& sc) {
    AnalysisSet set{};
    set.equilibrium = set.welfare = set.strategy = set.collapse = true;
    set.tax = sc.tax_mode != TaxMode::None;
    set.montecarlo = sc.sim.has_value();
    set.sweep = sc.sweep.has_value();
    return set;
}

RunReport run(const Scenario& sc, const RunOptions& opt) {
    if (opt.analyses.tax && sc.tax_mode == TaxMode::None) {
        throw ValidationError("tax", "tax analysis requested but the scenario has no tax field");
    }
    if (opt.analyses.montecarlo && !sc.sim) {
        throw ValidationError("sim",
                              "montecarlo analysis requested but the scenario has no sim block");
    }
    if (opt.analyses.sweep && !sc.sweep) {
        throw ValidationError("sweep",
                              "sweep analysis requested but the scenario has no sweep block");
    }

    RunReport rep{};
    rep.scenario_file = sc.source_name;
    rep.digest = sc.digest;
    fill_point(sc, opt, rep);

    if (opt.analyses.sweep) {
        const SweepSpec& sw = *sc.sweep;
        const std::size_t n = static_cast<std::size_t>(sw.steps);
        std::vector<SweepPoint> points(n);

        RunOptions point_opt = opt;
        point_opt.analyses.sweep = false;

        const auto eval_point = [&](std::size_t i) {
            double value = sw.lo + (sw.hi - sw.lo) * static_cast<double>(i) /
                                       static_cast<double>(n - 1);
            if (i == n - 1) value = sw.hi;
            RunOptions po = point_opt;
            RunReport sub{};
            if (sw.param == "a") {
                po.forced_share = value;
                fill_point(sc, po, sub);
            } else {
                const Scenario mutated = with_scalar(sc, sw.param, value);
                fill_point(mutated, po, sub);
            }
            return SweepPoint{value, flatten_metrics(sub)};
        };

        const std::size_t workers = sweep_thread_count(n);
        if (workers <= 1) {
            for (std::size_t i = 0; i < n; ++i) points[i] = eval_point(i);
        } else {
            std::atomic<std::size_t> next{0};
            std::atomic<bool> failed{false};
            std::mutex err_mu;
            std::exception_ptr err;
            const auto work = [&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= n || failed.load()) return;
                    try {
                        points[i] = eval_point(i);
                    } catch (...) {
                        {
                            const std::lock_guard<std::mutex> lock(err_mu);
                            if (!err) err = std::current_exception();
                        }
                        failed.store(true);
                        return;
                    }
                }
            };
            std::vector<std::thread> pool;
            pool.reserve(workers - 1);
            for (std::size_t t = 0; t + 1 < workers; ++t) pool.emplace_back(work);
            work();
            for (auto& th : pool) th.join();
            if (failed.load()) std::rethrow_exception(err);
        }
        rep.sweep = SweepBlock{sw.param, std::move(points)};
    }
    return rep;
}

std::vector<std::pair<std::string, double>> flatten_metrics(const RunReport& r) {
    std::vector<std::pair<std::string, double>> out;
    if (r.equilibrium) {
        out.emplace_back("equilibrium.a_priv", r.equilibrium->a_priv);
        out.emplace_back("equilibrium.a_star", r.equilibrium->a_star);
        out.emplace_back("equilibrium.a_eval", r.equilibrium->a_eval);
        out.emplace_back("equilibrium.price", r.equilibrium->price);
    }
    if (r.welfare) {
        out.emplace_back("welfare.user_surplus", r.welfare->at_eval.w.user_surplus);
        out.emplace_back("welfare.publisher_revenue", r.welfare->at_eval.w.publisher_revenue);
        out.emplace_back("welfare.ai_profit", r.welfare->at_eval.w.ai_profit);
        out.emplace_back("welfare.total", r.welfare->at_eval.w.total);
        out.emplace_back("welfare.total_at_star", r.welfare->at_star.w.total);
        out.emplace_back("welfare.deadweight_loss", r.welfare->deadweight_loss);
        out.emplace_back("welfare.mispricing.expected_surplus",
                         r.welfare->mispricing_at_eval.expected_surplus);
    }
    if (r.strategy) {
        for (const auto& row : r.strategy->publishers) {
            const std::string base = "strategy." + row.id;
            out.emplace_back(base + ".revenue_null", row.outcome.revenue_null);
            out.emplace_back(base + ".revenue_blocking", row.outcome.revenue_blocking);
            out.emplace_back(base + ".revenue_tolling", row.outcome.revenue_tolling);
            out.emplace_back(base + ".optimal_toll", row.outcome.optimal_toll);
            if (row.outcome.assumption_a_valid) {
                out.emplace_back(base + ".assumption_a_valid",
                                 *row.outcome.assumption_a_valid ? 1.0 : 0.0);
            }
        }
    }
    if (r.tax) {
        out.emplace_back("tax.tau", r.tax->tau);
        out.emplace_back("tax.subsidy", r.tax->subsidy ? 1.0 : 0.0);
        out.emplace_back("tax.a_of_tau", r.tax->eq.a_of_tau);
        out.emplace_back("tax.welfare_at_a", r.tax->eq.welfare_at_a);
        out.emplace_back("tax.dwl_remaining", r.tax->eq.dwl_remaining);
    }
    if (r.collapse) {
        out.emplace_back("collapse.viable", r.collapse->viable() ? 1.0 : 0.0);
        if (r.collapse->viable()) {
            const CollapseReport& c = *r.collapse->report;
            out.emplace_back("collapse.a_c", c.a_c);
            out.emplace_back("collapse.pi_at_root", c.pi_at_root);
            out.emplace_back("collapse.stability_slope", c.stability_slope);
            out.emplace_back("collapse.d_ac_dv", c.d_ac_dv);
            out.emplace_back("collapse.d_ac_dtheta", c.d_ac_dtheta);
            out.emplace_back("collapse.d_ac_dphi", c.d_ac_dphi);
        }
    }
    if (r.montecarlo) {
        if (r.montecarlo->single) {
            const SimResult& s = *r.montecarlo->single;
            out.emplace_back("montecarlo.a_hat", s.a_hat);
            out.emplace_back("montecarlo.a_true", s.a_true);
            out.emplace_back("montecarlo.abs_error", std::fabs(s.a_hat - s.a_true));
            out.emplace_back("montecarlo.ci_halfwidth", s.ci_halfwidth);
            out.emplace_back("montecarlo.price_hat", s.price_hat);
        }
        if (r.montecarlo->loglog_slope) {
            out.emplace_back("montecarlo.loglog_slope", *r.montecarlo->loglog_slope);
        }
    }
    return out;
}

std::string emit_json(const RunReport& r) {
    check_finite(r);
    JsonWriter w;
    w.begin_object();

    w.key("tool");
    w.begin_object();
    w.key("name");
    w.value_str("amkt");
    w.key("version");
    w.value_str("0.1.0");
    w.end_object();

    w.key("scenario");
    w.begin_object();
    w.key("file");
    w.value_str(r.scenario_file);
    w.key("digest");
    w.value_str(r.digest);
    w.end_object();

    w.key("analyses");
    w.begin_object();

    if (r.equilibrium) {
        w.key("equilibrium");
        w.begin_object();
        w.key("a_priv");
        w.value(r.equilibrium->a_priv);
        w.key("a_star");
        w.value(r.equilibrium->a_star);
        w.key("a_eval");
        w.value(r.equilibrium->a_eval);
        w.key("price");
        w.value(r.equilibrium->price);
        w.end_object();
    }
    if (r.welfare) {
        const auto write_point = [&](const char* name, const WelfarePoint& p) {
            w.key(name);
            w.begin_object();
            w.key("a");
            w.value(p.a);
            w.key("user_surplus");
            w.value(p.w.user_surplus);
            w.key("publisher_revenue");
            w.value(p.w.publisher_revenue);
            w.key("ai_profit");
            w.value(p.w.ai_profit);
            w.key("total");
            w.value(p.w.total);
            w.end_object();
        };
        w.key("welfare");
        w.begin_object();
        write_point("at_eval", r.welfare->at_eval);
        write_point("at_star", r.welfare->at_star);
        w.key("deadweight_loss");
        w.value(r.welfare->deadweight_loss);
        w.key("mispricing");
        w.begin_object();
        w.key("human_surplus_per_impression");
        w.value(r.welfare->mispricing_at_eval.human_surplus_per_impression);
        w.key("ai_loss_per_impression");
        w.value(r.welfare->mispricing_at_eval.ai_loss_per_impression);
        w.key("expected_surplus");
        w.value(r.welfare->mispricing_at_eval.expected_surplus);
        w.end_object();
        w.end_object();
    }
    if (r.strategy) {
        w.key("strategy");
        w.begin_object();
        w.key("a_eval");
        w.value(r.strategy->a_eval);
        w.key("publishers");
        w.begin_array();
        for (const auto& row : r.strategy->publishers) {
            w.array_item();
            w.begin_object();
            w.key("id");
            w.value_str(row.id);
            w.key("revenue_null");
            w.value(row.outcome.revenue_null);
            w.key("revenue_blocking");
            w.value(row.outcome.revenue_blocking);
            w.key("revenue_tolling");
            w.value(row.outcome.revenue_tolling);
            w.key("optimal_toll");
            w.value(row.outcome.optimal_toll);
            w.key("chosen");
            w.value_str(to_string(row.outcome.chosen));
            if (row.outcome.assumption_a_valid) {
                w.key("assumption_a_valid");
                w.value(*row.outcome.assumption_a_valid);
            }
            w.end_object();
        }
        w.end_array();
        w.end_object();
    }
    if (r.tax) {
        w.key("tax");
        w.begin_object();
        w.key("tau");
        w.value(r.tax->tau);
        w.key("subsidy");
        w.value(r.tax->subsidy);
        w.key("a_of_tau");
        w.value(r.tax->eq.a_of_tau);
        w.key("welfare_at_a");
        w.value(r.tax->eq.welfare_at_a);
        w.key("dwl_remaining");
        w.value(r.tax->eq.dwl_remaining);
        w.key("agent_fee");
        w.value(r.tax->passthrough.agent_fee);
        w.key("user_fee");
        w.value(r.tax->passthrough.user_fee);
        w.end_object();
    }
    if (r.collapse) {
        w.key("collapse");
        w.begin_object();
        w.key("viable");
        w.value(r.collapse->viable());
        if (r.collapse->viable()) {
            const CollapseReport& c = *r.collapse->report;
            w.key("a_c");
            w.value(c.a_c);
            w.key("marginal_id");
            w.value_str(c.marginal_id);
            w.key("pi_at_root");
            w.value(c.pi_at_root);
            w.key("stability_slope");
            w.value(c.stability_slope);
            w.key("d_ac_dv");
            w.value(c.d_ac_dv);
            w.key("d_ac_dtheta");
            w.value(c.d_ac_dtheta);
            w.key("d_ac_dphi");
            w.value(c.d_ac_dphi);
            w.key("recovery_windows");
            w.begin_array();
            for (const auto& win : c.recovery_windows) {
                w.array_item();
                w.begin_object();
                w.key("lo");
                w.value(win.lo);
                w.key("hi");
                w.value(win.hi);
                w.end_object();
            }
            w.end_array();
        } else {
            w.key("error");
            w.value_str(r.collapse->error);
            w.key("message");
            w.value_str(r.collapse->message);
        }
        w.end_object();
    }
    if (r.montecarlo) {
        const MonteCarloBlock& m = *r.montecarlo;
        w.key("montecarlo");
        w.begin_object();
        w.key("rng");
        w.value_str(kRngName);
        w.key("seed");
        w.value(static_cast<std::uint64_t>(m.cfg.seed));
        w.key("seed_source");
        w.value_str(m.seed_source);
        w.key("m_users");
        w.value(static_cast<std::uint64_t>(m.cfg.m_users));
        w.key("tau");
        w.value(m.cfg.tau);
        if (m.single) {
            w.key("a_hat");
            w.value(m.single->a_hat);
            w.key("a_true");
            w.value(m.single->a_true);
            w.key("abs_error");
            w.value(std::fabs(m.single->a_hat - m.single->a_true));
            w.key("ci_halfwidth");
            w.value(m.single->ci_halfwidth);
            w.key("price_hat");
            w.value(m.single->price_hat);
            w.key("per_publisher_revenue");
            w.begin_object();
            for (const auto& [id, rev] : m.single->per_publisher_revenue) {
                w.key(id);
                w.value(rev);
            }
            w.end_object();
        }
        if (!m.rows.empty()) {
            w.key("rows");
            w.begin_array();
            for (const auto& row : m.rows) {
                w.array_item();
                w.begin_object();
                w.key("seed");
                w.value(static_cast<std::uint64_t>(row.seed));
                w.key("m_users");
                w.value(static_cast<std::uint64_t>(row.m_users));
                w.key("tau");
                w.value(row.tau);
                w.key("a_hat");
                w.value(row.a_hat);
                w.key("a_true");
                w.value(row.a_true);
                w.key("abs_error");
                w.value(row.abs_error);
                w.key("ci_halfwidth");
                w.value(row.ci_halfwidth);
                w.end_object();
            }
            w.end_array();
        }
        if (m.loglog_slope) {
            w.key("loglog_slope");
            w.value(*m.loglog_slope);
        }
        w.end_object();
    }
    if (r.sweep) {
        w.key("sweep");
        w.begin_object();
        w.key("param");
        w.value_str(r.sweep->param);
        w.key("points");
        w.begin_array();
        for (const auto& p : r.sweep->points) {
            w.array_item();
            w.begin_object();
            w.key("value");
            w.value(p.value);
            w.key("metrics");
            w.begin_object();
            for (const auto& [name, value] : p.metrics) {
                w.key(name);
                w.value(value);
            }
            w.end_object();
            w.end_object();
        }
        w.end_array();
        w.end_object();
    }

    w.end_object(); // analyses
    w.end_object(); // root
    return std::move(w).take();
}

std::string emit_csv(const RunReport& r) {
    check_finite(r);
    std::string out;
    if (r.sweep) {
        out = "param,value,metric,metric_value\n";
        for (const auto& p : r.sweep->points) {
            for (const auto& [name, value] : p.metrics) {
                out += csv_field(r.sweep->param);
                out += ',';
                out += fmt_double(p.value);
                out += ',';
                out += csv_field(name);
                out += ',';
                out += fmt_double(value);
                out += '\n';
            }
        }
        return out;
    }
    if (r.montecarlo) {
        out = "seed,m_users,tau,a_hat,a_true,abs_error,ci_halfwidth\n";
        const auto row_line = [&](std::uint64_t seed, std::size_t m, double tau, double a_hat,
                                  double a_true, double abs_error, double ci) {
            out += std::to_string(seed);
            out += ',';
            out += std::to_string(m);
            out += ',';
            out += fmt_double(tau);
            out += ',';
            out += fmt_double(a_hat);
            out += ',';
            out += fmt_double(a_true);
            out += ',';
            out += fmt_double(abs_error);
            out += ',';
            out += fmt_double(ci);
            out += '\n';
        };
        const MonteCarloBlock& m = *r.montecarlo;
        if (m.single) {
            row_line(m.cfg.seed, m.cfg.m_users, m.cfg.tau, m.single->a_hat, m.single->a_true,
                     std::fabs(m.single->a_hat - m.single->a_true), m.single->ci_halfwidth);
        }
        for (const auto& row : m.rows) {
            row_line(row.seed, row.m_users, row.tau, row.a_hat, row.a_true, row.abs_error,
                     row.ci_halfwidth);
        }
        return out;
    }
    out = "metric,value\n";
    for (const auto& [name, value] : flatten_metrics(r)) {
        out += csv_field(name);
        out += ',';
        out += fmt_double(value);
        out += '\n';
    }
    return out;
}

void emit_to_file(const RunReport& r, OutputFormat format, const std::filesystem::path& dest) {
    const std::string text = format == OutputFormat::Json ? emit_json(r) : emit_csv(r);
    std::ofstream out(dest, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open output file: " + dest.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw IoError("failed writing output file: " + dest.string());
}

} // namespace amkt
