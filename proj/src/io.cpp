#include "memaccel/io.hpp"

#include "memaccel/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace memaccel {

using nlohmann::json;

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double printed(double v) {
    if (!std::isfinite(v)) return v;
    return std::strtod(format_number(v).c_str(), nullptr);
}

json to_json(const Gains& g) {
    json betas = json::array();
    for (double b : g.betas()) betas.push_back(printed(b));
    return {{"M", g.memory_order()}, {"alpha", printed(g.alpha())}, {"betas", betas}};
}

Gains gains_from_json(const json& j) {
    try {
        const int m = j.at("M").get<int>();
        const double alpha = j.at("alpha").get<double>();
        auto betas = j.value("betas", std::vector<double>{});
        if (m < 1 || static_cast<std::size_t>(m - 1) != betas.size())
            throw Error(ErrorKind::ParseError, "M = " + std::to_string(m) + " but " + std::to_string(betas.size()) +
                                                   " betas given");
        return Gains::make(alpha, std::move(betas));
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("gains: ") + e.what());
    }
}

Gains load_gains_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    try {
        return gains_from_json(json::parse(in));
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, path + ": " + e.what());
    }
}

Gains printed(const Gains& g) {
    std::vector<double> betas;
    for (double b : g.betas()) betas.push_back(printed(b));
    return Gains::make(printed(g.alpha()), std::move(betas));
}

json to_json(const GuaranteeReport& r, bool with_samples) {
    json out = {{"nu", printed(r.nu)}, {"worst_lambda", printed(r.worst_lambda)}, {"refined", r.refined},
                {"sample_count", r.samples.size()}};
    if (with_samples) {
        json s = json::array();
        for (const auto& smp : r.samples) s.push_back({printed(smp.lambda), printed(smp.modulus)});
        out["samples"] = std::move(s);
    }
    return out;
}

std::string samples_csv(const GuaranteeReport& r) {
    std::ostringstream out;
    out << "lambda,max_root_modulus\n";
    for (const auto& smp : r.samples) out << format_number(smp.lambda) << ',' << format_number(smp.modulus) << '\n';
    return out.str();
}

json to_json(const TuningResult& t) {
    json out = to_json(t.gains);
    out["mu"] = printed(t.mu);
    out["nu_star"] = printed(t.nu_star);
    out["alpha_star"] = printed(t.alpha_star);
    out["beta1_star"] = printed(t.beta1_star);
    out["degenerate"] = t.degenerate;
    return out;
}

json to_json(const SearchResult& r) {
    return {{"gains", to_json(r.gains)},
            {"report", to_json(r.report)},
            {"seed_report", to_json(r.seed_report)},
            {"evaluations", r.evaluations},
            {"improved", r.improved}};
}

json to_json(Complex z) { return json::array({printed(z.real()), printed(z.imag())}); }

json to_json(const ClaimCoeffs& c) {
    json a = json::array();
    for (double v : c.a) a.push_back(printed(v));
    return {{"M", c.M}, {"nu", printed(c.nu)}, {"a", a}};
}

const char* to_string(SpecialCase kind) noexcept {
    switch (kind) {
        case SpecialCase::None: return "none";
        case SpecialCase::UnitCircleRoot: return "unit_circle_root";
        case SpecialCase::LeadingBelowMinusOne: return "leading_below_minus_one";
    }
    return "unknown";
}

json to_json(const SpecialCaseResult& r) {
    json out = {{"kind", to_string(r.kind)}, {"zero_polynomial", r.zero_polynomial}};
    if (r.kind == SpecialCase::UnitCircleRoot) {
        out["root"] = to_json(r.root);
        out["theta"] = printed(r.theta);
    }
    return out;
}

json to_json(const WitnessReport& r) {
    return {{"found", r.found},         {"theta", printed(r.theta)},     {"root", to_json(r.root)},
            {"modulus", printed(r.modulus)}, {"scanned", r.scanned}, {"route", r.route}};
}

json to_json(const PartitionField& f) {
    json roots1 = json::array(), roots2 = json::array();
    for (const auto& z : f.roots_p1) roots1.push_back(to_json(z));
    for (const auto& z : f.roots_p2) roots2.push_back(to_json(z));
    json phase = json::array();
    for (auto v : f.phase_match) phase.push_back(v != 0 ? 1 : 0);
    return {{"theta", printed(f.theta)},
            {"window",
             {{"re_min", printed(f.window.re_min)},
              {"re_max", printed(f.window.re_max)},
              {"im_min", printed(f.window.im_min)},
              {"im_max", printed(f.window.im_max)},
              {"nx", f.window.nx},
              {"ny", f.window.ny}}},
            {"tie_tol", printed(f.tie_tol)},
            {"angle_tol", printed(f.angle_tol)},
            {"layout", "row-major, row r at im_min + (r + 0.5) * dy"},
            {"type_mask", f.type_mask},
            {"phase_match", phase},
            {"roots_p1", roots1},
            {"roots_p2", roots2}};
}

}  // namespace memaccel
