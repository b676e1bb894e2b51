#include "sosfit/report.hpp"

#include <algorithm>
#include <limits>
#include <cstdio>
#include <string>
#include <vector>

namespace sosfit {

namespace {

using nlohmann::json;

std::string fmt(const json& v) {
    if (v.is_null()) return "-";
    if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
    if (v.is_number()) return format_sig(v.get<double>());
    return v.get<std::string>();
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

std::string input_line(const json& rep) {
    const auto& in = rep.at("input");
    return in.at("path").get<std::string>() + " (n = " + fmt(in.at("n")) +
           ", r = " + fmt(in.at("r")) + ")";
}

std::string fit_notes(const json& f) {
    std::string notes;
    if (f.contains("boundary_a") && f.at("boundary_a").get<bool>()) notes += " [boundary a = 1]";
    if (!f.at("converged").get<bool>()) notes += " [not converged]";
    return notes;
}

std::string render_fit(const json& rep) {
    std::string out = "Model fits for " + input_line(rep) + "\n\n";
    out += pad("model", 22) + pad("beta", 10) + pad("sigma", 10) + pad("a", 10) +
           pad("loglik", 10) + pad("AIC", 10) + "\n";
    std::vector<json> rows(rep.at("fits").begin(), rep.at("fits").end());
    auto aic_key = [](const json& x) {
        return x.at("aic").is_number() ? x.at("aic").get<double>()
                                       : std::numeric_limits<double>::infinity();
    };
    std::stable_sort(rows.begin(), rows.end(), [&](const json& x, const json& y) {
        return aic_key(x) < aic_key(y);
    });
    for (const auto& f : rows) {
        out += pad(f.at("model").get<std::string>(), 22) + pad(fmt(f.at("beta")), 10) +
               pad(fmt(f.at("sigma")), 10) + pad(fmt(f.at("a")), 10) +
               pad(fmt(f.at("loglik")), 10) + pad(fmt(f.at("aic")), 10) + fit_notes(f) + "\n";
    }
    return out;
}

std::string render_interval_block(const json& block, const char* title) {
    std::string out = std::string(title) + " (z = " + fmt(block.at("z")) + ")\n";
    for (const char* key : {"beta", "sigma", "a"}) {
        const auto& iv = block.at(key);
        out += "  " + pad(key, 6) + ": " + fmt(iv.at("lo")) + " .. " + fmt(iv.at("hi")) + "\n";
    }
    return out;
}

std::string render_ci(const json& rep) {
    std::string out = "Confidence intervals for " + input_line(rep) + "\n\n";
    const auto& f = rep.at("fit");
    out += "fit " + f.at("model").get<std::string>() + ": beta = " + fmt(f.at("beta")) +
           ", sigma = " + fmt(f.at("sigma")) + ", a = " + fmt(f.at("a")) +
           ", loglik = " + fmt(f.at("loglik")) + fit_notes(f) + "\n\n";
    const std::string level = fmt(json(100.0 * (1.0 - rep.at("gamma").get<double>())));
    out += render_interval_block(rep.at("equi_tailed"), (level + "% equi-tailed intervals").c_str());
    if (rep.contains("bonferroni") && !rep.at("bonferroni").is_null()) {
        out += render_interval_block(rep.at("bonferroni"),
                                     (level + "% Bonferroni simultaneous region").c_str());
    }
    if (rep.contains("survival") && !rep.at("survival").is_null()) {
        const auto& s = rep.at("survival");
        out += "survival S(" + fmt(s.at("t0")) + ") = " + fmt(s.at("point")) + ", " + level +
               "% interval " + fmt(s.at("lo")) + " .. " + fmt(s.at("hi"));
        if (s.at("clamped").get<bool>()) out += " (clamped to [0, 1])";
        out += "\n";
    }
    return out;
}

std::string render_fit_summary(const json& f) {
    std::string out = f.at("model").get<std::string>() + ": ";
    if (!f.at("beta").is_null()) out += "beta = " + fmt(f.at("beta")) + ", ";
    out += "sigma = " + fmt(f.at("sigma"));
    if (!f.at("a").is_null()) out += ", a = " + fmt(f.at("a"));
    out += ", loglik = " + fmt(f.at("loglik")) + fit_notes(f);
    return out;
}

std::string render_test(const json& rep) {
    std::string out = "GLR test for " + input_line(rep) + "\n\n";
    out += "null H: " + rep.at("null").get<std::string>() + ", alternative K: " +
           rep.at("alternative").get<std::string>() + " (" +
           rep.at("baseline").get<std::string>() + " baseline)\n";
    out += "under H  " + render_fit_summary(rep.at("fit_h")) + "\n";
    out += "under K  " + render_fit_summary(rep.at("fit_k")) + "\n";
    out += "lambda = " + fmt(rep.at("lambda")) + ", stat = -2 log lambda = " +
           fmt(rep.at("stat")) + (rep.at("boundary").get<bool>() ? " (boundary)" : "") + "\n";
    out += "threshold = " + fmt(rep.at("threshold")) + ", asymptotic p-value = " +
           fmt(rep.at("p_value")) + "\n";
    out += "decision at gamma = " + fmt(rep.at("gamma")) + ": " +
           (rep.at("reject").get<bool>() ? "reject H" : "do not reject H") + "\n";
    if (rep.contains("mc") && !rep.at("mc").is_null()) {
        const auto& mc = rep.at("mc");
        out += "MC actual level: " + fmt(mc.at("level")) + " (se " + fmt(mc.at("stderr")) +
               ", " + fmt(mc.at("replicates")) + " replicates, " + fmt(mc.at("failures")) +
               " failures, seed " + std::to_string(mc.at("seed").get<std::uint64_t>()) + ")\n";
    }
    return out;
}

std::string render_simulate(const json& rep) {
    std::string out = "Simulation study: " + fmt(rep.at("cells")) + " cells x " +
                      fmt(rep.at("replicates")) + " replicates (seed " +
                      std::to_string(rep.at("seed").get<std::uint64_t>()) + ")\n";
    out += "wrote " + fmt(rep.at("rows")) + " rows to " + rep.at("output").get<std::string>() + "\n";
    return out;
}

}  // namespace

std::string format_sig(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string render_report(const Report& report) {
    if (report.contains("error")) {
        return "error: " + report.at("error").at("message").get<std::string>() + "\n";
    }
    const std::string cmd = report.at("command").get<std::string>();
    if (cmd == "fit") return render_fit(report);
    if (cmd == "ci") return render_ci(report);
    if (cmd == "test") return render_test(report);
    if (cmd == "simulate") return render_simulate(report);
    return report.dump(2) + "\n";
}

}  // namespace sosfit
